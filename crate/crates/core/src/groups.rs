//! The three finite abelian groups that serve as vertex sets.
//!
//! Elements are dense indices in `[0, order)`; the identity is always index 0.
//! For `Z_m + Z_2^d` the index of `(x, y)` is `x * 2^d + y`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported group order; vertex indices are `u32`.
const MAX_ORDER: u64 = u32::MAX as u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// `Z_n`.
    Cyclic { n: u32 },
    /// `Z_2^d`.
    Binary { d: u32 },
    /// `Z_m + Z_2^d`.
    Product { m: u32, d: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn index(self) -> u32 {
        self.0
    }
}

impl GroupSpec {
    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("cyclic group order must be positive"));
        }
        Ok(GroupSpec::Cyclic { n })
    }

    pub fn binary(d: u32) -> Result<Self> {
        Self::product(1, d).map(|_| GroupSpec::Binary { d })
    }

    pub fn product(m: u32, d: u32) -> Result<Self> {
        if m == 0 || d == 0 {
            return Err(Error::usage("group parameters m and d must be positive"));
        }
        if d >= 32 || (m as u64) << d > MAX_ORDER {
            return Err(Error::usage(format!(
                "group Z{m}xZ2^{d} has more than {MAX_ORDER} elements"
            )));
        }
        Ok(GroupSpec::Product { m, d })
    }

    pub fn order(&self) -> u32 {
        match *self {
            GroupSpec::Cyclic { n } => n,
            GroupSpec::Binary { d } => 1 << d,
            GroupSpec::Product { m, d } => m << d,
        }
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    pub fn element(&self, index: u32) -> Result<Element> {
        if index >= self.order() {
            return Err(Error::usage(format!(
                "element index {index} out of range for {self} of order {}",
                self.order()
            )));
        }
        Ok(Element(index))
    }

    /// Builds the element `(x, y)` of `Z_m + Z_2^d`.
    pub fn pair(&self, x: u32, y: u32) -> Result<Element> {
        match *self {
            GroupSpec::Product { m, d } if x < m && y < (1 << d) => Ok(Element((x << d) | y)),
            GroupSpec::Product { .. } => Err(Error::usage(format!(
                "pair ({x}, {y}) out of range for {self}"
            ))),
            _ => Err(Error::usage(format!("{self} is not a product group"))),
        }
    }

    /// Splits an element of `Z_m + Z_2^d` into its cyclic and binary parts.
    pub fn split(&self, a: Element) -> Result<(u32, u32)> {
        match *self {
            GroupSpec::Product { d, .. } => {
                self.element(a.0)?;
                Ok((a.0 >> d, a.0 & ((1 << d) - 1)))
            }
            _ => Err(Error::usage(format!("{self} is not a product group"))),
        }
    }

    pub fn add(&self, a: Element, b: Element) -> Result<Element> {
        self.element(a.0)?;
        self.element(b.0)?;
        Ok(Element(self.add_raw(a.0, b.0)))
    }

    pub fn neg(&self, a: Element) -> Result<Element> {
        self.element(a.0)?;
        Ok(Element(self.neg_raw(a.0)))
    }

    /// Left fold of [`GroupSpec::add`]; the empty sum is the identity.
    pub fn sum<I>(&self, elems: I) -> Result<Element>
    where
        I: IntoIterator<Item = Element>,
    {
        elems
            .into_iter()
            .try_fold(self.identity(), |acc, e| self.add(acc, e))
    }

    /// Sum of raw indices, assumed in range.
    pub(crate) fn sum_raw(&self, elems: &[u32]) -> u32 {
        elems.iter().fold(0, |acc, &e| self.add_raw(acc, e))
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        match *self {
            GroupSpec::Cyclic { n } => ((a as u64 + b as u64) % n as u64) as u32,
            GroupSpec::Binary { .. } => a ^ b,
            GroupSpec::Product { m, d } => {
                let x = ((a >> d) + (b >> d)) % m;
                let mask = (1 << d) - 1;
                (x << d) | ((a ^ b) & mask)
            }
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        match *self {
            GroupSpec::Cyclic { n } => (n - a) % n,
            GroupSpec::Binary { .. } => a,
            GroupSpec::Product { m, d } => {
                let x = (m - (a >> d)) % m;
                (x << d) | (a & ((1 << d) - 1))
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Cyclic { n } => write!(f, "Z{n}"),
            GroupSpec::Binary { d } => write!(f, "Z2^{d}"),
            GroupSpec::Product { m, d } => write!(f, "Z{m}xZ2^{d}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses the header tokens `Z<n>`, `Z2^<d>` and `Z<m>xZ2^<d>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("malformed group token {s:?}"));
        let num = |t: &str| -> Result<u32> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) || t.starts_with('0') {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        let rest = s.strip_prefix('Z').ok_or_else(bad)?;
        if let Some((m, bin)) = rest.split_once('x') {
            let d = bin.strip_prefix("Z2^").ok_or_else(bad)?;
            GroupSpec::product(num(m)?, num(d)?)
        } else if let Some(d) = rest.strip_prefix("2^") {
            GroupSpec::binary(num(d)?)
        } else {
            GroupSpec::cyclic(num(rest)?)
        }
    }
}
