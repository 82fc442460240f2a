//! Explicit cofactors for γ^g ∈ (r_g, r_{g+1}, r_{g+2}).
//!
//! Rearranging the r-recursion at index k+3 gives
//! γ·r_k = 2A·r_{k+2} + 2B·r_{k+1} − 2(k+3)·r_{k+3},
//! so multiplying by γ shifts a combination of three consecutive r's up by
//! one. Starting from 1 = r_0 and applying this g times lands in the ideal.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Coeff, LaurentU, Poly, PolyJson, Rational, RingDescriptor, Var};
use crate::relations::{r_polys, r_polys_local, r_recursion_coeffs};

#[derive(Clone, Debug, PartialEq)]
pub struct GammaWitness<C: Coeff> {
    pub g: u32,
    /// Cofactors of r_g, r_{g+1}, r_{g+2}.
    pub cofactors: [Poly<C>; 3],
}

fn witness_with<C: Coeff>(g: u32, u_inv: &C) -> GammaWitness<C> {
    let ring = RingDescriptor::omega(1);
    let gamma = Poly::<C>::var(ring, Var::Gamma);
    let two = crate::poly::rat(2);
    let mut c = [Poly::one(ring), Poly::zero(ring), Poly::zero(ring)];
    for k in 0..g {
        let (a, b) = r_recursion_coeffs(k + 3, u_inv);
        let lead = c[0].clone();
        c = [
            gamma.mul(&c[1]).add(&b.mul(&lead).scale(&two)),
            gamma.mul(&c[2]).add(&a.mul(&lead).scale(&two)),
            lead.scale(&crate::poly::rat(-2 * (k as i64 + 3))),
        ];
    }
    GammaWitness { g, cofactors: c }
}

pub fn gamma_power_witness(g: u32) -> GammaWitness<Rational> {
    witness_with(g, &crate::poly::rat(1))
}

pub fn gamma_power_witness_local(g: u32) -> GammaWitness<LaurentU> {
    witness_with(g, &LaurentU::u_pow(-1))
}

impl<C: Coeff> GammaWitness<C> {
    /// Σ cofactor·r − γ^g, which is zero for a valid witness.
    pub fn residual(&self, rs: &[Poly<C>]) -> Result<Poly<C>> {
        let g = self.g as usize;
        if rs.len() < g + 3 {
            return Err(Error::InvalidArgument("not enough r polynomials".into()));
        }
        let ring = RingDescriptor::omega(1);
        let mut acc = Poly::<C>::var(ring, Var::Gamma).pow(self.g).neg();
        for (i, c) in self.cofactors.iter().enumerate() {
            acc = acc.add(&c.mul(&rs[g + i]));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g,
            "target": format!("gamma^{}", self.g),
            "cofactors": self.cofactors.iter().enumerate().map(|(i, c)| json!({
                "generator": format!("r_{}", self.g as usize + i),
                "poly": c.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl GammaWitness<Rational> {
    pub fn verify(&self) -> Result<bool> {
        Ok(self.residual(&r_polys(self.g + 2))?.is_zero())
    }
}

impl GammaWitness<LaurentU> {
    pub fn verify(&self) -> Result<bool> {
        Ok(self.residual(&r_polys_local(self.g + 2))?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{frac, rat, QPoly};

    #[test]
    fn genus_one_cofactors() {
        let r = RingDescriptor::omega(1);
        let w = gamma_power_witness(1);
        let omega = QPoly::var(r, Var::Main);
        let delta = QPoly::var(r, Var::Delta(1));
        let beta = QPoly::var(r, Var::Beta);
        // γ = 2[(ω+δ/2−5)r_2 − 2(β−2δ−2)r_1 − 3r_3], moved to the r_1, r_2, r_3 frame
        let on_r2 = (omega + delta.scale(&frac(1, 2)) - QPoly::from_int(r, 5)).scale(&rat(2));
        let on_r1 = (beta - delta.scale(&rat(2)) - QPoly::from_int(r, 2)).scale(&rat(-4));
        assert_eq!(w.cofactors[0], on_r1);
        assert_eq!(w.cofactors[1], on_r2);
        assert_eq!(w.cofactors[2], QPoly::from_int(r, -6));
        assert!(w.verify().unwrap());
    }

    #[test]
    fn witnesses_verify() {
        for g in 0..=6 {
            assert!(gamma_power_witness(g).verify().unwrap(), "g={g}");
            assert!(gamma_power_witness_local(g).verify().unwrap(), "local g={g}");
        }
    }

    #[test]
    fn local_witness_specializes() {
        let one = rat(1);
        for g in 0..=4 {
            let local = gamma_power_witness_local(g);
            let plain = gamma_power_witness(g);
            for (l, p) in local.cofactors.iter().zip(&plain.cofactors) {
                assert_eq!(&l.specialize_u(&one).unwrap(), p);
            }
        }
    }

    #[test]
    fn broken_witness_detected() {
        let mut w = gamma_power_witness(2);
        w.cofactors[2] = w.cofactors[2].add(&QPoly::from_int(RingDescriptor::omega(1), 1));
        assert!(!w.verify().unwrap());
    }
}
