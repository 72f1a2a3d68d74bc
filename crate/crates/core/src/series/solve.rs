//! The functional equation for `B(x, y)` and everything derived from it.

use num_bigint::BigInt;

use super::{Bounds, TruncatedSeries, Var};
use crate::count_table::{CountKey, CountTable};
use crate::error::{Error, Result};

fn right_side(b: &TruncatedSeries) -> TruncatedSeries {
    let bounds = b.bounds();
    let one = TruncatedSeries::one(bounds);
    let x = TruncatedSeries::var(Var::X, bounds);
    let xy = TruncatedSeries::monomial(1, [1, 1, 0], bounds);
    let b2 = b * b;
    let inner = &x * &b2 - (&x - &one) * (b - &one);
    &one + &xy * &b2 * inner
}

/// Fixed point of `B = 1 + x y B^2 (x B^2 - (x - 1)(B - 1))`.
///
/// Iterates `N_x + 1` times from `B = 1` (the right side gains one x-order
/// per pass) and then checks the residual.
pub fn solve_b(bounds: Bounds) -> Result<TruncatedSeries> {
    let mut b = TruncatedSeries::one(bounds);
    for _ in 0..=bounds.x {
        b = right_side(&b);
    }
    let residual = &b - &right_side(&b);
    if !residual.is_zero() {
        return Err(Error::SeriesMismatch(format!("B residual {residual}")));
    }
    Ok(b)
}

/// `A`, `D~_0`, `D~(x,y,z)` and `E(x,y,z)` derived from `B`.
/// All four carry an x-bound one less than `B`.
#[derive(Clone, Debug)]
pub struct Chain {
    pub a: TruncatedSeries,
    pub d0: TruncatedSeries,
    pub d: TruncatedSeries,
    pub e: TruncatedSeries,
}

pub fn derive_chain(b: &TruncatedSeries) -> Result<Chain> {
    let bounds = b.bounds();
    let one = TruncatedSeries::one(bounds);
    let x = TruncatedSeries::var(Var::X, bounds);
    let z = TruncatedSeries::var(Var::Z, bounds);
    let b_minus_1 = b - &one;

    // A = (B - 1) / (x B)
    let a = b_minus_1.div_exact_by_x_power(1)? * b.invert()?;
    let xa = &x * &a;
    // D~_0 = 1 + A + x^2 A^2 / (1 - x A)
    let d0 = &one + &a + &xa * &xa * (&one - &xa).invert()?;
    // D~ = D~_0 / (1 - x z A)
    let d = &d0 * (&one - &z * &xa).invert()?;
    // E = [(x B^2 - (x - 1)(B - 1)) / x] / (B - z (B - 1))
    let numerator = (&x * b * b - (&x - &one) * &b_minus_1).div_exact_by_x_power(1)?;
    let e = numerator * (b - &z * &b_minus_1).invert()?;

    if e != d {
        return Err(Error::SeriesMismatch(format!("E and D~ disagree: {}", &e - &d)));
    }
    Ok(Chain { a, d0, d, e })
}

/// `E(x, y, z)` exact within `bounds`: solves `B` one x-order deeper and
/// derives.
pub fn solve_e(bounds: Bounds) -> Result<TruncatedSeries> {
    let b = solve_b(Bounds::new(bounds.x + 1, bounds.y, bounds.z))?;
    Ok(derive_chain(&b)?.e)
}

/// A substitution `v := 0` or `v := 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subst {
    Zero(Var),
    One(Var),
}

impl Subst {
    pub fn var(self) -> Var {
        match self {
            Subst::Zero(v) | Subst::One(v) => v,
        }
    }
}

/// Structural facts `exp(u) <= c * exp(v)` that hold for every nonzero
/// term of a series; they certify that summing over `u` is exact.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Support {
    facts: Vec<(Var, u32, Var)>,
}

impl Support {
    pub fn none() -> Self {
        Self::default()
    }

    /// `exp(u) <= c * exp(v)`.
    pub fn with(mut self, u: Var, c: u32, v: Var) -> Self {
        self.facts.push((u, c, v));
        self
    }

    /// `t <= m <= n <= 2m`: holds for `E`, `B`, `A`, `D~` alike.
    pub fn length_dist_rank() -> Self {
        Self::none()
            .with(Var::X, 2, Var::Y)
            .with(Var::Y, 1, Var::X)
            .with(Var::Z, 1, Var::Y)
    }
}

/// Applies substitutions in order. Setting a variable to 1 needs a fact
/// bounding its exponent by a surviving variable; the bound of that variable
/// shrinks so every retained coefficient is a complete sum.
pub fn specialize(s: &TruncatedSeries, substs: &[Subst], support: &Support) -> Result<TruncatedSeries> {
    let mut facts = support.facts.clone();
    let mut eliminated: Vec<Var> = Vec::new();
    let mut bounds = s.bounds();
    let mut terms: Vec<([u32; 3], BigInt)> = s.terms().map(|(e, c)| (*e, c.clone())).collect();

    for &sub in substs {
        let u = sub.var();
        if eliminated.contains(&u) {
            return Err(Error::InsufficientTruncation(format!("{u} substituted twice")));
        }
        let ui = u.index();
        match sub {
            Subst::Zero(_) => {
                terms.retain(|(e, _)| e[ui] == 0);
                facts.retain(|&(a, _, b)| a != u && b != u);
            }
            Subst::One(_) => {
                let &(_, c, v) = facts
                    .iter()
                    .filter(|(a, _, b)| *a == u && !eliminated.contains(b) && *b != u)
                    .min_by_key(|(_, c, v)| bounds.get(*v).min(bounds.get(u) / c))
                    .ok_or_else(|| {
                        Error::InsufficientTruncation(format!("no surviving variable bounds the exponent of {u}"))
                    })?;
                let limit = bounds.get(v).min(bounds.get(u) / c);
                bounds = bounds.with(v, limit);
                let vi = v.index();
                let mut summed: std::collections::BTreeMap<[u32; 3], BigInt> = Default::default();
                for (mut e, coef) in terms {
                    if e[vi] > limit {
                        continue;
                    }
                    e[ui] = 0;
                    *summed.entry(e).or_default() += coef;
                }
                terms = summed.into_iter().collect();
                // w <= c1 u and u <= c v give w <= c1 c v
                let derived: Vec<_> = facts
                    .iter()
                    .filter(|(_, _, b)| *b == u)
                    .flat_map(|&(w, c1, _)| {
                        facts
                            .iter()
                            .filter(move |(a, _, _)| *a == u)
                            .map(move |&(_, c2, v2)| (w, c1 * c2, v2))
                    })
                    .filter(|(w, _, v2)| w != v2)
                    .collect();
                facts.extend(derived);
                facts.retain(|&(a, _, b)| a != u && b != u);
            }
        }
        bounds = bounds.with(u, 0);
        eliminated.push(u);
    }
    Ok(TruncatedSeries::from_terms(bounds, terms))
}

/// `[y^m z^t] G(y, z)` for `t <= m <= n_m`, `t <= n_t`, computed from
/// `G = b / (1 - y b^3 z)` and, independently, as `[y^(m-t)] b^(3t+1)`.
pub fn rank_gf_coeffs(n_m: u32, n_t: u32) -> Result<CountTable> {
    let b_xy = solve_b(Bounds::new(2 * n_m, n_m, 0))?;
    let b = specialize(&b_xy, &[Subst::One(Var::X)], &Support::length_dist_rank())?;
    let bounds = Bounds::new(0, n_m, n_t);
    let b = TruncatedSeries::from_terms(bounds, b.terms().map(|(e, c)| (*e, c.clone())));
    let one = TruncatedSeries::one(bounds);
    let yz = TruncatedSeries::monomial(1, [0, 1, 1], bounds);
    let g = &b * (&one - yz * b.pow(3)).invert()?;

    let mut table = CountTable::new();
    for m in 0..=n_m {
        for t in 0..=m.min(n_t) {
            let direct = g.coeff(0, m, t);
            let via_powers = b.pow(3 * t + 1).coeff(0, m - t, 0);
            if direct != via_powers {
                return Err(Error::SeriesMismatch(format!(
                    "[y^{m} z^{t}] G = {direct} but [y^{}] b^{} = {via_powers}",
                    m - t,
                    3 * t + 1
                )));
            }
            table.add(
                CountKey {
                    n: None,
                    m: Some(m),
                    t: Some(t),
                },
                &direct,
            );
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse_poly;

    #[test]
    fn b_low_order_coefficients() {
        let b = solve_b(Bounds::new(6, 4, 0)).unwrap();
        assert_eq!(b.coeff(0, 0, 0), BigInt::from(1));
        for m in 0..=4 {
            assert_eq!(b.coeff(1, m, 0), BigInt::from(0));
        }
        assert_eq!(b.coeff(2, 1, 0), BigInt::from(1));
        assert_eq!(b.coeff(3, 2, 0), BigInt::from(1));
        assert_eq!(b.coeff(4, 2, 0), BigInt::from(3));
        // B(x, 0) = 1
        assert!((1..=6).all(|n| b.coeff(n, 0, 0) == BigInt::from(0)));
    }

    #[test]
    fn chain_small_values() {
        let b = solve_b(Bounds::new(7, 4, 4)).unwrap();
        let chain = derive_chain(&b).unwrap();
        assert_eq!(chain.a.bounds(), Bounds::new(6, 4, 4));
        assert_eq!(chain.a.coeff(1, 1, 0), BigInt::from(1));
        assert_eq!(chain.e.coeff(3, 2, 0), BigInt::from(2));
        let sum_t = |n, m| (0..=4).map(|t| chain.e.coeff(n, m, t)).sum::<BigInt>();
        assert_eq!(sum_t(3, 2), BigInt::from(4));
        assert_eq!(sum_t(5, 3), BigInt::from(23));
        assert!(chain.e.terms().all(|(_, c)| *c > BigInt::from(0)));
    }

    #[test]
    fn specialization_certificates() {
        let e = solve_e(Bounds::DEFAULT).unwrap();
        let support = Support::length_dist_rank();
        let g = specialize(&e, &[Subst::One(Var::X), Subst::One(Var::Z)], &support).unwrap();
        assert_eq!(g.bounds(), Bounds::new(0, 8, 0));
        let expected = [1u64, 2, 9, 52, 340, 2394, 17710, 135720, 1068012];
        for (m, v) in expected.iter().enumerate() {
            assert_eq!(g.coeff(0, m as u32, 0), BigInt::from(*v), "m = {m}");
        }
        let f = specialize(&e, &[Subst::One(Var::Y), Subst::One(Var::Z)], &support).unwrap();
        assert_eq!(f.bounds(), Bounds::new(9, 0, 0));
        let rows = [1u64, 1, 2, 5, 14, 40];
        for (n, v) in rows.iter().enumerate() {
            assert_eq!(f.coeff(n as u32, 0, 0), BigInt::from(*v));
        }
        assert!(matches!(
            specialize(&e, &[Subst::One(Var::X)], &Support::none()),
            Err(Error::InsufficientTruncation(_))
        ));
        assert!(matches!(
            specialize(&e, &[Subst::One(Var::X), Subst::One(Var::Y)], &support),
            Err(Error::InsufficientTruncation(_))
        ));
        let g0 = specialize(&e, &[Subst::One(Var::X), Subst::Zero(Var::Z)], &support).unwrap();
        assert_eq!(g0.coeff(0, 3, 0), BigInt::from(22));
    }

    #[test]
    fn little_b_satisfies_quartic_equation() {
        let b_xy = solve_b(Bounds::new(20, 10, 0)).unwrap();
        let b = specialize(&b_xy, &[Subst::One(Var::X)], &Support::length_dist_rank()).unwrap();
        let bounds = b.bounds();
        let y = parse_poly("y", bounds).unwrap();
        let rhs = TruncatedSeries::one(bounds) + y * b.pow(4);
        assert_eq!(b, rhs);
    }

    #[test]
    fn rank_gf_examples() {
        let t = rank_gf_coeffs(8, 8).unwrap();
        let at = |m, t_| t.get(None, Some(m), Some(t_));
        assert_eq!(
            (at(2, 0), at(2, 1), at(2, 2)),
            (BigInt::from(4), BigInt::from(4), BigInt::from(1))
        );
        assert_eq!(at(3, 0), BigInt::from(22));
        assert!((0..=8).all(|m| at(m, m) == BigInt::from(1)));
    }
}
