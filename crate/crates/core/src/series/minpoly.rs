//! Polynomials with series coefficients and the built-in quartic relations
//! satisfied by `E(x, y, z)` and its specializations.

use super::{parse_poly, Bounds, Subst, TruncatedSeries, Var};
use crate::error::Result;

/// `c_0 + c_1 E + ... + c_d E^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyInSeries {
    pub coeffs: Vec<TruncatedSeries>,
}

impl PolyInSeries {
    pub fn new(coeffs: Vec<TruncatedSeries>) -> Self {
        assert!(coeffs.len() >= 2, "degree must be at least 1");
        assert!(!coeffs.last().unwrap().is_zero(), "leading coefficient vanishes");
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates at `s` by Horner's rule, truncated to the common bounds.
    pub fn residual(&self, s: &TruncatedSeries) -> TruncatedSeries {
        let mut acc = self.coeffs.last().unwrap().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &acc * s + c;
        }
        acc
    }
}

/// A transcribed quartic together with the specialization of `E` it
/// annihilates.
#[derive(Clone, Copy, Debug)]
pub struct MinimalPolynomial {
    pub name: &'static str,
    /// The series the relation is about, e.g. `E(x,1,z)`.
    pub target: &'static str,
    pub substs: &'static [Subst],
    /// Coefficients of `E^0 .. E^4` as polynomial expressions.
    pub coeffs: [&'static str; 5],
}

impl MinimalPolynomial {
    pub fn build(&self, bounds: Bounds) -> Result<PolyInSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| parse_poly(c, bounds))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyInSeries::new(coeffs))
    }
}

/// The nine relations: the trivariate quartic, the one for `E(x,y,1)` and the
/// specializations with `y`, `z` or `x` fixed.
pub fn builtin_minpolys() -> &'static [MinimalPolynomial] {
    use Subst::{One, Zero};
    use Var::{X, Y, Z};
    const LIST: &[MinimalPolynomial] = &[
        MinimalPolynomial {
            name: "E(x,y,z)",
            target: "E(x,y,z)",
            substs: &[],
            coeffs: [
                "1",
                "-(1 - 2*y*x*(1-x)*z + y*(1-x)^2*(1-z))",
                "y*(2*x^2*z^2 + x*(1-x)*(2*z^2 - 6*z + 3) + y*x^2*(1-x)^2*z^2 + (1-x)^2*(1-z) - y*x*(1-x)^3*(1-z))",
                "y*x*(2*y*x^2*(1-x)*z^3 + x*z*(1-z)*(4-z) - 2*y*x*(1-x)^2*z*(1-z) - 2*(1-x)*(1-z)^2)",
                "y*x^2*(y*x^2*z^4 - y*x*(1-x)*z^2*(1-z) + (1-z)^3)",
            ],
        },
        MinimalPolynomial {
            name: "E(x,y,1)",
            target: "E(x,y,1)",
            substs: &[One(Z)],
            coeffs: [
                "1",
                "-(1 - 2*y*x*(1-x))",
                "y*x*(-1 + 3*x + y*x*(1-x)^2)",
                "2*y^2*x^3*(1-x)",
                "y^2*x^4",
            ],
        },
        MinimalPolynomial {
            name: "E(x,1,z)",
            target: "E(x,1,z)",
            substs: &[One(Y)],
            coeffs: [
                "1",
                "-(1 - 2*x*(1-x)*z + (1-x)^2*(1-z))",
                "2*x^2*z^2 + x*(1-x)*(2*z^2 - 6*z + 3) + x^2*(1-x)^2*z^2 + (1-x)^2*(1-z) - x*(1-x)^3*(1-z)",
                "x*(2*x^2*(1-x)*z^3 + x*z*(1-z)*(4-z) - 2*x*(1-x)^2*z*(1-z) - 2*(1-x)*(1-z)^2)",
                "x^2*(x^2*z^4 - x*(1-x)*z^2*(1-z) + (1-z)^3)",
            ],
        },
        MinimalPolynomial {
            name: "F = E(x,1,1)",
            target: "E(x,1,1)",
            substs: &[One(Y), One(Z)],
            coeffs: [
                "1",
                "-(1 - 2*x + 2*x^2)",
                "x*(-1 + 4*x - 2*x^2 + x^3)",
                "2*x^3*(1-x)",
                "x^4",
            ],
        },
        MinimalPolynomial {
            name: "E(x,y,0)",
            target: "E(x,y,0)",
            substs: &[Zero(Z)],
            coeffs: [
                "1",
                "-(1 + y*(1-x)^2)",
                "y*(1-x)*(1 + 2*x - y*x*(1-x)^2)",
                "-2*y*x*(1-x)",
                "y*x^2",
            ],
        },
        MinimalPolynomial {
            name: "E(x,1,0)",
            target: "E(x,1,0)",
            substs: &[Zero(Z), One(Y)],
            coeffs: [
                "1",
                "-(2 - 2*x + x^2)",
                "(1-x)*(1 + x + 2*x^2 - x^3)",
                "-2*x*(1-x)",
                "x^2",
            ],
        },
        MinimalPolynomial {
            name: "G = E(1,y,z)",
            target: "E(1,y,z)",
            substs: &[One(X)],
            coeffs: ["1", "-1", "2*y*z^2", "y*z*(1-z)*(4-z)", "y*(y*z^4 + (1-z)^3)"],
        },
        MinimalPolynomial {
            name: "G0 = E(1,y,0)",
            target: "E(1,y,0)",
            substs: &[One(X), Zero(Z)],
            coeffs: ["1", "-1", "0", "0", "y"],
        },
        MinimalPolynomial {
            name: "g = E(1,y,1)",
            target: "E(1,y,1)",
            substs: &[One(X), One(Z)],
            coeffs: ["1", "-1", "2*y", "0", "y^2"],
        },
    ];
    LIST
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{solve_e, specialize, Support};

    #[test]
    fn horner_matches_direct_sum() {
        let b = Bounds::new(5, 5, 0);
        let p = PolyInSeries::new(vec![
            parse_poly("1", b).unwrap(),
            parse_poly("-1", b).unwrap(),
            parse_poly("0", b).unwrap(),
            parse_poly("y", b).unwrap(),
        ]);
        let s = parse_poly("1 + x + y", b).unwrap();
        let direct = parse_poly("1 - (1 + x + y) + y*(1 + x + y)^3", b).unwrap();
        assert_eq!(p.residual(&s), direct);
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn all_builtin_relations_vanish() {
        let bounds = Bounds::new(14, 8, 8);
        let e = solve_e(bounds).unwrap();
        let support = Support::length_dist_rank();
        for mp in builtin_minpolys() {
            let s = specialize(&e, mp.substs, &support).unwrap();
            let poly = mp.build(s.bounds()).unwrap();
            let r = poly.residual(&s);
            assert!(r.is_zero(), "{}: {}", mp.name, r);
        }
        assert_eq!(builtin_minpolys().len(), 9);
    }

    #[test]
    fn e_x10_quadratic_sign_is_forced() {
        let e = solve_e(Bounds::new(14, 8, 8)).unwrap();
        let s = specialize(
            &e,
            &[Subst::Zero(Var::Z), Subst::One(Var::Y)],
            &Support::length_dist_rank(),
        )
        .unwrap();
        let mut coeffs = builtin_minpolys()
            .iter()
            .find(|m| m.target == "E(x,1,0)")
            .unwrap()
            .coeffs;
        coeffs[2] = "-(1-x)*(1 + x + 2*x^2 - x^3)";
        let flipped = PolyInSeries::new(coeffs.iter().map(|c| parse_poly(c, s.bounds()).unwrap()).collect());
        assert!(!flipped.residual(&s).is_zero());
    }

    #[test]
    fn g_relation_in_square_form() {
        let bounds = Bounds::new(20, 10, 10);
        let e = solve_e(bounds).unwrap();
        let g = specialize(
            &e,
            &[Subst::One(Var::X), Subst::One(Var::Z)],
            &Support::length_dist_rank(),
        )
        .unwrap();
        let b = g.bounds();
        let one = TruncatedSeries::one(b);
        let y = TruncatedSeries::var(Var::Y, b);
        let rhs = (&one + &y * &g * &g).pow(2);
        assert!((&g - &rhs).is_zero());
        let g0 = specialize(
            &e,
            &[Subst::One(Var::X), Subst::Zero(Var::Z)],
            &Support::length_dist_rank(),
        )
        .unwrap();
        let p = PolyInSeries::new(vec![
            TruncatedSeries::one(g0.bounds()),
            -TruncatedSeries::one(g0.bounds()),
            TruncatedSeries::zero(g0.bounds()),
            TruncatedSeries::zero(g0.bounds()),
            TruncatedSeries::var(Var::Y, g0.bounds()),
        ]);
        assert!(p.residual(&g0).is_zero());
    }
}
