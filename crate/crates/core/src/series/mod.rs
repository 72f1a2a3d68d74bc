//! Truncated trivariate power series in `x, y, z` with big-integer
//! coefficients.
//!
//! Every series carries its own per-variable bounds `(N_x, N_y, N_z)`; a
//! coefficient is meaningful only inside that box. Binary operations work in
//! the intersection of the operands' boxes, so a result never claims more
//! precision than its inputs.

mod expr;
mod minpoly;
mod solve;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use expr::parse_poly;
pub use minpoly::{builtin_minpolys, MinimalPolynomial, PolyInSeries};
pub use solve::{derive_chain, rank_gf_coeffs, solve_b, solve_e, specialize, Chain, Subst, Support};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        })
    }
}

/// Maximum retained exponent of each variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Bounds {
    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Self { x, y, z }
    }

    /// Covers `n <= 16`, `m <= 8` with one spare order.
    pub const DEFAULT: Bounds = Bounds::new(17, 9, 9);

    pub fn meet(self, other: Bounds) -> Bounds {
        Bounds::new(self.x.min(other.x), self.y.min(other.y), self.z.min(other.z))
    }

    pub fn get(self, v: Var) -> u32 {
        [self.x, self.y, self.z][v.index()]
    }

    pub fn with(self, v: Var, value: u32) -> Bounds {
        let mut a = [self.x, self.y, self.z];
        a[v.index()] = value;
        Bounds::new(a[0], a[1], a[2])
    }

    pub fn contains(self, e: [u32; 3]) -> bool {
        e[0] <= self.x && e[1] <= self.y && e[2] <= self.z
    }

    fn cells(self) -> usize {
        (self.x as usize + 1) * (self.y as usize + 1) * (self.z as usize + 1)
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Sparse exact series; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    bounds: Bounds,
    coeffs: BTreeMap<[u32; 3], BigInt>,
}

impl TruncatedSeries {
    pub fn zero(bounds: Bounds) -> Self {
        Self {
            bounds,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: impl Into<BigInt>, bounds: Bounds) -> Self {
        Self::monomial(c, [0, 0, 0], bounds)
    }

    pub fn one(bounds: Bounds) -> Self {
        Self::constant(1, bounds)
    }

    pub fn var(v: Var, bounds: Bounds) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(1, e, bounds)
    }

    /// `c * x^i y^j z^k`, dropped if outside the bounds.
    pub fn monomial(c: impl Into<BigInt>, exps: [u32; 3], bounds: Bounds) -> Self {
        let mut s = Self::zero(bounds);
        s.add_term(exps, c.into());
        s
    }

    /// Builds a series from explicit terms; terms outside the bounds are dropped.
    pub fn from_terms(bounds: Bounds, terms: impl IntoIterator<Item = ([u32; 3], BigInt)>) -> Self {
        let mut s = Self::zero(bounds);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    fn add_term(&mut self, e: [u32; 3], c: BigInt) {
        if c.is_zero() || !self.bounds.contains(e) {
            return;
        }
        let slot = self.coeffs.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> BigInt {
        self.coeffs.get(&[i, j, k]).cloned().unwrap_or_default()
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.coeffs.iter()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Restricts to a smaller box.
    pub fn truncate(&self, bounds: Bounds) -> Self {
        let bounds = bounds.meet(self.bounds);
        Self {
            bounds,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| bounds.contains(**e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.bounds, self.coeffs.iter().map(|(e, v)| (*e, v * c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.bounds);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeff(0, 0, 0);
        if c0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant);
        }
        let b = self.bounds;
        let rest: Vec<([u32; 3], &BigInt)> = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e != [0, 0, 0])
            .map(|(e, c)| (*e, c))
            .collect();
        let mut inv: BTreeMap<[u32; 3], BigInt> = BTreeMap::new();
        // inv[e] = c0 * (delta(e) - sum_{f != 0} s[f] inv[e - f]); lexicographic
        // order visits e - f before e.
        for i in 0..=b.x {
            for j in 0..=b.y {
                for k in 0..=b.z {
                    let mut acc = if (i, j, k) == (0, 0, 0) {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                    for (f, c) in &rest {
                        if f[0] <= i && f[1] <= j && f[2] <= k {
                            if let Some(v) = inv.get(&[i - f[0], j - f[1], k - f[2]]) {
                                acc -= *c * v;
                            }
                        }
                    }
                    if !acc.is_zero() {
                        inv.insert([i, j, k], acc * &c0);
                    }
                }
            }
        }
        debug_assert!(inv.len() <= b.cells());
        Ok(Self { bounds: b, coeffs: inv })
    }

    /// Divides by `x^p`. Every term must have x-exponent at least `p`; the
    /// x-bound drops by `p` since higher coefficients are unknown.
    pub fn div_exact_by_x_power(&self, p: u32) -> Result<Self> {
        if self.coeffs.keys().any(|e| e[0] < p) {
            return Err(Error::InexactXDivision(p));
        }
        let bounds = Bounds::new(self.bounds.x.saturating_sub(p), self.bounds.y, self.bounds.z);
        Ok(Self::from_terms(
            bounds,
            self.coeffs.iter().map(|(e, c)| ([e[0] - p, e[1], e[2]], c.clone())),
        ))
    }

    /// `[{"x":i,"y":j,"z":k,"c":"..."}, ...]` in lexicographic order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(e, c)| serde_json::json!({"x": e[0], "y": e[1], "z": e[2], "c": c.to_string()}))
                .collect(),
        )
    }

    pub fn from_json(bounds: Bounds, value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Term {
            x: u32,
            y: u32,
            z: u32,
            c: String,
        }
        let terms: Vec<Term> = serde_json::from_value(value.clone())?;
        let mut out = Self::zero(bounds);
        for t in terms {
            let c: BigInt =
                t.c.parse()
                    .map_err(|_| Error::Json(format!("bad coefficient {:?}", t.c)))?;
            out.add_term([t.x, t.y, t.z], c);
        }
        Ok(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.coeffs.iter().enumerate() {
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || *e == [0, 0, 0] {
                parts.push(mag.to_string());
            }
            for (name, p) in ["x", "y", "z"].iter().zip(e) {
                match p {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    p => parts.push(format!("{name}^{p}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        write!(
            f,
            " + O(x^{}, y^{}, z^{})",
            self.bounds.x + 1,
            self.bounds.y + 1,
            self.bounds.z + 1
        )
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let bounds = self.bounds.meet(rhs.bounds);
        let mut out = self.truncate(bounds);
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let bounds = self.bounds.meet(rhs.bounds);
        let mut out = self.truncate(bounds);
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let bounds = self.bounds.meet(rhs.bounds);
        let mut acc: BTreeMap<[u32; 3], BigInt> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            if !bounds.contains(*a) {
                continue;
            }
            for (b, cb) in &rhs.coeffs {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                if bounds.contains(e) {
                    *acc.entry(e).or_default() += ca * cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TruncatedSeries { bounds, coeffs: acc }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            bounds: self.bounds,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries { (&self).$m(&rhs) }
        }
        impl $tr<&TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries { (&self).$m(rhs) }
        }
        impl $tr<TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        -&self
    }
}
