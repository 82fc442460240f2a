//! Simultaneous spectra of (α, β, γ, δ) on the J_{g,1} models.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{rational_roots, Matrix};
use crate::poly::{frac, rat, rational_to_string, QPoly, Rational, Var};
use crate::relations::{igen, jgen_n1, jgen_n1_local, GeneratorSet, Parity, Sign};

use super::model::{build_quotient_model, graded_quotient_profile, BuildOptions, QuotientModel};

#[derive(Clone, Debug, PartialEq)]
pub struct EigenTuple {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Vec<Rational>,
    pub gen_mult: usize,
}

impl EigenTuple {
    pub fn to_json(&self) -> Value {
        json!({
            "alpha": rational_to_string(&self.alpha),
            "beta": rational_to_string(&self.beta),
            "gamma": rational_to_string(&self.gamma),
            "delta": self.delta.iter().map(rational_to_string).collect::<Vec<_>>(),
            "gen_mult": self.gen_mult,
        })
    }

    /// Whether every generator vanishes at this point.
    pub fn annihilates(&self, gens: &[QPoly]) -> bool {
        gens.iter().all(|p| {
            p.evaluate(&self.alpha, &self.beta, &self.gamma, &self.delta, None)
                .is_zero()
        })
    }
}

#[derive(Clone, Debug)]
pub struct EigenCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct EigenReport {
    pub g: u32,
    pub sign: Sign,
    pub theta: Option<Rational>,
    pub model_dim: usize,
    /// Generalized β-eigenspace at 2 (u = 1 only).
    pub v2_dim: Option<usize>,
    /// α-spectrum on V₂ with generalized multiplicities.
    pub alpha_spectrum: Vec<(Rational, usize)>,
    /// Dimension covered by rational simultaneous eigenvalues.
    pub subspace_dim: usize,
    pub tuples: Vec<EigenTuple>,
    pub checks: Vec<EigenCheck>,
}

impl EigenReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g,
            "n": 1,
            "sign": self.sign.as_str(),
            "theta": self.theta.as_ref().map(rational_to_string),
            "model_dim": self.model_dim,
            "v2_dim": self.v2_dim,
            "alpha_spectrum": self.alpha_spectrum.iter().map(|(l, d)| json!({
                "alpha": rational_to_string(l),
                "gen_mult": d,
            })).collect::<Vec<_>>(),
            "subspace_dim": self.subspace_dim,
            "tuples": self.tuples.iter().map(EigenTuple::to_json).collect::<Vec<_>>(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

/// α-candidates on V₂: sign·(−1)^{i−1}(2i−1), i = 1..g.
pub fn alpha_candidates(g: u32, sign: Sign) -> Vec<Rational> {
    (1..=g as i64)
        .map(|i| {
            let s = if i % 2 == 1 { 1 } else { -1 };
            rat(sign.factor() * s * (2 * i - 1))
        })
        .collect()
}

/// The θ-deformed simultaneous eigenvalue (ω, β, γ, δ).
pub fn theta_tuple(g: u32, theta: &Rational) -> Result<(Rational, Rational, Rational, Rational)> {
    if theta.is_zero() {
        return Err(Error::InvalidArgument("theta must be nonzero".into()));
    }
    let s = rat(if g % 2 == 1 { 1 } else { -1 });
    let inv = theta.recip();
    let omega = &s * (rat(2 * g as i64 - 2) + (theta + &inv) * frac(1, 2));
    let delta = &s * (&inv - theta);
    Ok((omega, rat(2), Rational::zero(), delta))
}

pub fn plain_model(g: u32, sign: Sign) -> Result<QuotientModel> {
    build_quotient_model(&jgen_n1(g, sign), &igen(g, 1, Parity::Even)?)
}

/// J_{g,1}^±(u) with u specialized to θ.
pub fn theta_model(g: u32, sign: Sign, theta: &Rational) -> Result<(GeneratorSet<Rational>, QuotientModel)> {
    if theta.is_zero() {
        return Err(Error::InvalidArgument("theta must be nonzero".into()));
    }
    let local = jgen_n1_local(g, sign);
    let spec = crate::quotient::QuotientSpec::local_gn(g).specialize(theta)?;
    let set = local.map_polys(|p| p.specialize_u(theta), Some(spec.clone()))?;
    let lead = igen(g, 1, Parity::Even)?;
    let lead_ctx = lead.quotient_context.clone().expect("igen carries its context");
    let lead_gens: Vec<QPoly> = lead.polys().cloned().collect();
    let opts = BuildOptions {
        expected_graded: Some(graded_quotient_profile(&lead_gens, &lead_ctx, 200)?),
        ..Default::default()
    };
    let model = QuotientModel::build(set.label.clone(), set.gens.clone(), spec, &opts)?;
    Ok((set, model))
}

fn operators(model: &QuotientModel) -> Vec<Matrix> {
    let mut ops = vec![model.alpha_op(), model.op(Var::Beta).clone(), model.op(Var::Gamma).clone()];
    for i in 1..=model.ring.n {
        ops.push(model.op(Var::Delta(i)).clone());
    }
    ops
}

fn map_back(basis: &[Vec<Rational>], coords: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); basis[0].len()];
    for (b, c) in basis.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// Rational simultaneous generalized eigenvalues of commuting operators,
/// with the dimension of each joint generalized eigenspace.
pub fn simultaneous_spectrum(ops: &[Matrix]) -> Result<Vec<(Vec<Rational>, usize)>> {
    let Some(first) = ops.first() else {
        return Ok(Vec::new());
    };
    let dim = first.rows();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let ident: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            v
        })
        .collect();
    let mut out = Vec::new();
    split(ops, 0, ident, Vec::new(), &mut out)?;
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

fn split(
    ops: &[Matrix],
    k: usize,
    basis: Vec<Vec<Rational>>,
    prefix: Vec<Rational>,
    out: &mut Vec<(Vec<Rational>, usize)>,
) -> Result<()> {
    if k == ops.len() {
        out.push((prefix, basis.len()));
        return Ok(());
    }
    let restricted = ops[k].restrict(&basis)?;
    let roots = rational_roots(&restricted.char_poly()?);
    for root in roots {
        let sub: Vec<Vec<Rational>> = restricted
            .generalized_eigenspace(&root)
            .iter()
            .map(|c| map_back(&basis, c))
            .collect();
        if sub.is_empty() {
            continue;
        }
        let mut p = prefix.clone();
        p.push(root);
        split(ops, k + 1, sub, p, out)?;
    }
    Ok(())
}

fn spectrum_tuples(model: &QuotientModel) -> Result<Vec<EigenTuple>> {
    Ok(simultaneous_spectrum(&operators(model))?
        .into_iter()
        .map(|(vals, d)| EigenTuple {
            alpha: vals[0].clone(),
            beta: vals[1].clone(),
            gamma: vals[2].clone(),
            delta: vals[3..].to_vec(),
            gen_mult: d,
        })
        .collect())
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> EigenCheck {
    EigenCheck { name: name.to_string(), passed, detail: detail.into() }
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rational_to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn eigen_verify(g: u32, sign: Sign, theta: Option<Rational>) -> Result<EigenReport> {
    if g == 0 {
        return Err(Error::InvalidArgument("eigen checks need g >= 1".into()));
    }
    match theta {
        None => verify_plain(g, sign),
        Some(t) => verify_theta(g, sign, t),
    }
}

fn verify_plain(g: u32, sign: Sign) -> Result<EigenReport> {
    let model = plain_model(g, sign)?;
    let dim = model.dim();
    let alpha = model.alpha_op();
    let beta = model.op(Var::Beta);
    let v2 = beta.generalized_eigenspace(&rat(2));
    let mut checks = Vec::new();

    let nil_gamma = model.op(Var::Gamma).is_nilpotent_on(&v2)?;
    let nil_delta = model.op(Var::Delta(1)).is_nilpotent_on(&v2)?;
    checks.push(check("gamma_nilpotent_on_v2", nil_gamma, ""));
    checks.push(check("delta_nilpotent_on_v2", nil_delta, ""));

    let alpha_v2 = alpha.restrict(&v2)?;
    let cands = alpha_candidates(g, sign);
    let spectrum: Vec<(Rational, usize)> = cands
        .iter()
        .map(|l| (l.clone(), alpha_v2.generalized_eigenspace_dim(l)))
        .collect();
    let total: usize = spectrum.iter().map(|(_, d)| d).sum();
    let all_present = spectrum.iter().all(|(_, d)| *d >= 1);
    checks.push(check(
        "alpha_candidates_present",
        all_present,
        format!("multiplicities {:?}", spectrum.iter().map(|(_, d)| *d).collect::<Vec<_>>()),
    ));

    // completeness: Π (α − λ)^{dim V₂} vanishes on V₂
    let k = v2.len();
    let mut product = Matrix::identity(k);
    for l in &cands {
        product = product.mul(&alpha_v2.shift(l).pow(k));
    }
    let residue = (0..k).find(|&j| product.column(j).iter().any(|x| !x.is_zero()));
    let detail = match residue {
        None => format!("multiplicities sum to {total} of {k}"),
        Some(j) => format!(
            "spectrum residue on vector {}",
            fmt_vec(&map_back(&v2, &product.column(j)))
        ),
    };
    checks.push(check("alpha_spectrum_complete", residue.is_none() && total == k, detail));

    let top = cands.last().expect("g >= 1");
    let top_dim = alpha_v2.generalized_eigenspace_dim(top);
    checks.push(check(
        "top_eigenspace_one_dimensional",
        top_dim == 1,
        format!("alpha = {} has generalized dimension {top_dim}", rational_to_string(top)),
    ));

    let tuples = spectrum_tuples(&model)?;
    let gens: Vec<QPoly> = model.gens.iter().map(|(_, p)| p.clone()).collect();
    let bad: Vec<String> = tuples
        .iter()
        .filter(|t| !t.annihilates(&gens))
        .map(|t| format!("{}", t.to_json()))
        .collect();
    checks.push(check("tuples_annihilate_generators", bad.is_empty(), bad.join("; ")));

    Ok(EigenReport {
        g,
        sign,
        theta: None,
        model_dim: dim,
        v2_dim: Some(k),
        alpha_spectrum: spectrum,
        subspace_dim: tuples.iter().map(|t| t.gen_mult).sum(),
        tuples,
        checks,
    })
}

fn verify_theta(g: u32, sign: Sign, theta: Rational) -> Result<EigenReport> {
    let (set, model) = theta_model(g, sign, &theta)?;
    let (mut omega, beta, gamma, mut delta) = theta_tuple(g, &theta)?;
    if sign == Sign::Minus {
        omega = -omega;
        delta = -delta;
    }
    let alpha = &omega - &delta * frac(1, 2);
    let target = EigenTuple {
        alpha: alpha.clone(),
        beta: beta.clone(),
        gamma: gamma.clone(),
        delta: vec![delta.clone()],
        gen_mult: 0,
    };
    let gens: Vec<QPoly> = set.polys().cloned().collect();
    let mut checks = Vec::new();
    let by_eval = target.annihilates(&gens);
    checks.push(check(
        "theta_tuple_annihilates_generators",
        by_eval,
        format!(
            "omega = {}, delta = {}",
            rational_to_string(&omega),
            rational_to_string(&delta)
        ),
    ));

    let ops = operators(&model);
    let shifts = [&alpha, &beta, &gamma, &delta];
    let mut stacked: Vec<Vec<Rational>> = Vec::new();
    for (op, s) in ops.iter().zip(shifts) {
        let m = op.shift(s);
        for i in 0..m.rows() {
            stacked.push(m.row(i).to_vec());
        }
    }
    let kernel_dim = if model.dim() == 0 {
        0
    } else {
        Matrix::from_rows(stacked).kernel_basis().len()
    };
    checks.push(check(
        "theta_tuple_joint_kernel",
        kernel_dim >= 1,
        format!("joint kernel dimension {kernel_dim}"),
    ));

    let tuples = spectrum_tuples(&model)?;
    let bad: Vec<String> = tuples
        .iter()
        .filter(|t| !t.annihilates(&gens))
        .map(|t| format!("{}", t.to_json()))
        .collect();
    checks.push(check("tuples_annihilate_generators", bad.is_empty(), bad.join("; ")));

    Ok(EigenReport {
        g,
        sign,
        theta: Some(theta),
        model_dim: model.dim(),
        v2_dim: None,
        alpha_spectrum: Vec::new(),
        subspace_dim: tuples.iter().map(|t| t.gen_mult).sum(),
        tuples,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(a: i64, b: i64, c: i64, d: i64, mult: usize) -> EigenTuple {
        EigenTuple { alpha: rat(a), beta: rat(b), gamma: rat(c), delta: vec![rat(d)], gen_mult: mult }
    }

    #[test]
    fn genus_one_spectrum() {
        let r = eigen_verify(1, Sign::Plus, None).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.alpha_spectrum, vec![(rat(1), 1)]);
        assert_eq!(r.tuples, vec![tuple(1, 2, 0, 0, 1), tuple(-1, -2, 0, 2, 1)]);
        assert_eq!(r.subspace_dim, 2);
    }

    #[test]
    fn genus_two_spectrum() {
        let r = eigen_verify(2, Sign::Plus, None).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        let alphas: Vec<Rational> = r.alpha_spectrum.iter().map(|(a, _)| a.clone()).collect();
        assert_eq!(alphas, vec![rat(1), rat(-3)]);
        assert_eq!(r.alpha_spectrum[1].1, 1);
    }

    #[test]
    fn minus_is_phi_of_plus() {
        for g in 1..=2 {
            let plus = eigen_verify(g, Sign::Plus, None).unwrap();
            let minus = eigen_verify(g, Sign::Minus, None).unwrap();
            assert!(minus.passed());
            let mut flipped: Vec<EigenTuple> = plus
                .tuples
                .iter()
                .map(|t| EigenTuple {
                    alpha: -t.alpha.clone(),
                    beta: t.beta.clone(),
                    gamma: -t.gamma.clone(),
                    delta: t.delta.iter().map(|d| -d.clone()).collect(),
                    gen_mult: t.gen_mult,
                })
                .collect();
            flipped.sort_by(|a, b| b.alpha.cmp(&a.alpha).then(b.beta.cmp(&a.beta)));
            let mut got = minus.tuples.clone();
            got.sort_by(|a, b| b.alpha.cmp(&a.alpha).then(b.beta.cmp(&a.beta)));
            assert_eq!(got, flipped);
        }
    }

    #[test]
    fn theta_genus_one() {
        for theta in [rat(2), frac(3, 2)] {
            let r = eigen_verify(1, Sign::Plus, Some(theta)).unwrap();
            assert!(r.passed(), "{:?}", r.checks);
            assert_eq!(r.model_dim, 2);
        }
    }

    #[test]
    fn theta_tuple_values() {
        let (omega, beta, gamma, delta) = theta_tuple(1, &rat(2)).unwrap();
        assert_eq!(omega, frac(5, 4));
        assert_eq!(delta, frac(-3, 2));
        assert_eq!((beta, gamma), (rat(2), rat(0)));
    }

    #[test]
    fn spectrum_of_diagonal() {
        let a = Matrix::from_ints(&[&[1, 0], &[0, 2]]);
        let b = Matrix::from_ints(&[&[3, 0], &[0, 3]]);
        let s = simultaneous_spectrum(&[a, b]).unwrap();
        assert_eq!(s, vec![(vec![rat(2), rat(3)], 1), (vec![rat(1), rat(3)], 1)]);
    }
}
