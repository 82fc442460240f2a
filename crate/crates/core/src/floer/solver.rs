//! Sub-leading corrections h_{g,3} for the n = 3 generators.
//!
//! The ansatz f̂ = ξ_{g+1,3} + (−1)^{g+1} τ_{123}(ξ_{g,1}) + h has h running
//! over canonical monomials of R_{g,3} of degree at most 2(g−1). Each even
//! flip of f̂ must map under π into J_{g,1}^+, and f̂ must vanish at
//! (α, β, γ, δ) = (λ_i, 2, 0, 0) for i ≤ g+1. Both conditions are linear
//! in the coefficients of h.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{even_subsets, rat, PolyJson, QPoly, Rational, RingDescriptor, Var};
use crate::quotient::{canonical_rep, QuotientSpec};
use crate::relations::{flip_label, xi_in, GeneratorSet, Sign};

use super::eigen::{alpha_candidates, plain_model};
use super::model::QuotientModel;

const N: usize = 3;

#[derive(Clone, Debug)]
pub struct SubleadingSolution {
    pub g: u32,
    pub fhat: QPoly,
    pub correction: QPoly,
    pub unknowns: usize,
    pub rank: usize,
    pub equations: usize,
    /// Even flips of f̂.
    pub orbit: GeneratorSet<Rational>,
}

impl SubleadingSolution {
    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g,
            "n": N,
            "fhat": self.fhat.to_json(),
            "correction": self.correction.to_json(),
            "unknowns": self.unknowns,
            "equations": self.equations,
            "rank": self.rank,
            "unique": true,
            "orbit": self.orbit.to_json(),
        })
    }
}

/// ξ_{g+1,3} + (−1)^{g+1} τ_{123}(ξ_{g,1}), in ω coordinates.
pub fn subleading_ansatz(g: u32) -> Result<QPoly> {
    let top = xi_in(g as i64 + 1, N as i64, N)?.to_omega();
    let low = xi_in(g as i64, 1, N)?.to_omega().flip(&[1, 2, 3])?;
    let sign = rat(if g.is_multiple_of(2) { -1 } else { 1 });
    Ok(top.add(&low.scale(&sign)))
}

fn constraint_vector(p: &QPoly, model: &QuotientModel, points: &[Rational]) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for j in even_subsets(N) {
        let image = p.flip(&j)?.pi_reduce()?;
        out.extend(model.normal_form(&image)?);
    }
    let zero = Rational::zero();
    for l in points {
        out.push(p.evaluate(l, &rat(2), &zero, &[zero.clone(), zero.clone(), zero.clone()], None));
    }
    Ok(out)
}

pub fn solve_subleading(g: u32) -> Result<SubleadingSolution> {
    let model = plain_model(g, Sign::Plus)?;
    solve_subleading_with(g, &model)
}

/// Solves against a prebuilt model of J_{g,1}^+.
pub fn solve_subleading_with(g: u32, model: &QuotientModel) -> Result<SubleadingSolution> {
    if model.ring.n != 1 {
        return Err(Error::InvalidArgument("solver needs a model of J_{g,1}".into()));
    }
    let ring = RingDescriptor::omega(N);
    let spec = QuotientSpec::r_gn(g);
    let base = canonical_rep(&subleading_ansatz(g)?, &spec);
    let mut unknowns = Vec::new();
    for w in 0..g {
        unknowns.extend(spec.monomials_of_weight(&ring, w));
    }
    let points = alpha_candidates(g + 1, Sign::Plus);
    let rhs: Vec<Rational> = constraint_vector(&base, model, &points)?
        .into_iter()
        .map(|x| -x)
        .collect();
    let mut cols = Vec::with_capacity(unknowns.len());
    for m in &unknowns {
        cols.push(constraint_vector(&QPoly::term(ring, m.clone(), rat(1)), model, &points)?);
    }
    let equations = rhs.len();
    let (coeffs, rank) = if unknowns.is_empty() {
        if rhs.iter().any(|x| !x.is_zero()) {
            return Err(Error::Solver("ansatz violates the constraints with no freedom left".into()));
        }
        (Vec::new(), 0)
    } else {
        let a = Matrix::from_columns(equations, &cols);
        let rank = a.rank();
        if rank < unknowns.len() {
            return Err(Error::Solver(format!(
                "system is not uniquely solvable: rank {rank} for {} unknowns",
                unknowns.len()
            )));
        }
        let x = a
            .solve(&rhs)
            .ok_or_else(|| Error::Solver("system is infeasible".into()))?;
        (x, rank)
    };
    let correction = QPoly::from_terms(ring, unknowns.iter().cloned().zip(coeffs));
    let fhat = base.add(&correction);

    let mut orbit = GeneratorSet::new(format!("X_{{{g},3}}"), g, N, ring);
    orbit.sign = Some(Sign::Plus);
    orbit.quotient_context = Some(spec);
    for j in even_subsets(N) {
        orbit.push(format!("{} fhat_{{{g},3}}", flip_label(&j)), fhat.flip(&j)?);
    }
    Ok(SubleadingSolution {
        g,
        fhat,
        correction,
        unknowns: unknowns.len(),
        rank,
        equations,
        orbit,
    })
}

/// J_{g,3} assembled from the solver outputs for g, g+1 and γ times g−1.
pub fn jgen_n3(g: u32) -> Result<GeneratorSet<Rational>> {
    if g == 0 {
        return Err(Error::InvalidArgument("jgen_n3 needs g >= 1".into()));
    }
    let ring = RingDescriptor::omega(N);
    let gamma = QPoly::var(ring, Var::Gamma);
    let mut set = GeneratorSet::new(format!("J_{{{g},3}}^+"), g, N, ring);
    set.sign = Some(Sign::Plus);
    set.quotient_context = Some(QuotientSpec::r1());
    for k in [g, g + 1] {
        for (name, p) in solve_subleading(k)?.orbit.gens {
            set.push(name, p);
        }
    }
    for (name, p) in solve_subleading(g - 1)?.orbit.gens {
        set.push(format!("gamma*{name}"), gamma.mul(&p));
    }
    for i in 1..=N {
        let d = QPoly::var(ring, Var::Delta(i));
        set.push(
            format!("delta{i}^2+beta-2"),
            d.mul(&d).add(&QPoly::var(ring, Var::Beta)).sub(&QPoly::from_int(ring, 2)),
        );
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floer::build_quotient_model;
    use crate::poly::frac;
    use crate::relations::{igen, Parity};

    #[test]
    fn genus_zero() {
        let s = solve_subleading(0).unwrap();
        let r = RingDescriptor::omega(3);
        let alpha = QPoly::var(RingDescriptor::alpha(3), Var::Main).to_omega();
        assert_eq!(s.fhat, alpha.sub(&QPoly::one(r)));
        assert!(s.correction.is_zero());
        assert_eq!(s.unknowns, 0);
        assert_eq!(s.orbit.gens.len(), 4);
    }

    #[test]
    fn genus_one_unique() {
        let s = solve_subleading(1).unwrap();
        assert_eq!(s.unknowns, 1);
        assert_eq!(s.rank, 1);
        assert_eq!(s.correction, QPoly::from_rational(RingDescriptor::omega(3), frac(-3, 2)));
        let model = plain_model(1, Sign::Plus).unwrap();
        for p in s.orbit.polys() {
            assert!(model.membership(&p.pi_reduce().unwrap()).unwrap());
        }
    }

    #[test]
    fn genus_one_quotient_dimension() {
        let j = jgen_n3(1).unwrap();
        let model = build_quotient_model(&j, &igen(1, 3, Parity::Even).unwrap()).unwrap();
        let formula = crate::floer::hilbert::ptgn_coeffs(1, 3, 40).unwrap();
        assert_eq!(model.dim() as u64, formula.iter().sum::<u64>());
    }
}
