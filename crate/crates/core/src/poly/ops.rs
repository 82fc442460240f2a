//! Coordinate changes, flip symmetries, the π-map and evaluation.

use super::*;

impl<C: Coeff> Poly<C> {
    /// Rewrites the polynomial in the requested first coordinate using
    /// α = ω − (δ_1+…+δ_n)/2.
    pub fn change_coordinates(&self, target: Coord) -> Self {
        if self.ring.coord == target {
            return self.clone();
        }
        let ring = self.ring.with_coord(target);
        let half = frac(1, 2);
        let mut delta_sum = Poly::zero(ring);
        for i in 1..=ring.n {
            delta_sum = delta_sum.add(&Poly::var(ring, Var::Delta(i)));
        }
        let delta_half = delta_sum.scale(&half);
        let main = Poly::var(ring, Var::Main);
        let image = match target {
            // α ↦ ω − Σδ/2
            Coord::Omega => main.sub(&delta_half),
            // ω ↦ α + Σδ/2
            Coord::Alpha => main.add(&delta_half),
        };
        self.substitute(ring, &self.identity_images(ring, image))
    }

    fn identity_images(&self, ring: RingDescriptor, main: Poly<C>) -> Vec<Poly<C>> {
        let mut images = vec![main];
        for i in 1..=ring.n {
            images.push(Poly::var(ring, Var::Delta(i)));
        }
        images.push(Poly::var(ring, Var::Beta));
        images.push(Poly::var(ring, Var::Gamma));
        images.push(if ring.has_epsilon {
            Poly::var(ring, Var::Epsilon)
        } else {
            Poly::zero(ring)
        });
        images
    }

    pub fn to_omega(&self) -> Self {
        self.change_coordinates(Coord::Omega)
    }

    pub fn to_alpha(&self) -> Self {
        self.change_coordinates(Coord::Alpha)
    }

    /// τ_I: fixes ω, β, γ and negates δ_i for i ∈ I (1-based indices).
    pub fn flip(&self, subset: &[usize]) -> Result<Self> {
        let n = self.ring.n;
        if let Some(&bad) = subset.iter().find(|&&i| i == 0 || i > n) {
            return Err(invalid(format!("flip index {bad} outside 1..={n}")));
        }
        let mut mask = vec![false; n + 1];
        for &i in subset {
            mask[i] ^= true;
        }
        let omega = self.to_omega();
        let flipped = Poly::from_terms(
            omega.ring,
            omega.terms.iter().map(|(m, c)| {
                let odd = (1..=n).filter(|&i| mask[i] && m.d(i) % 2 == 1).count();
                (m.clone(), if odd % 2 == 1 { c.neg() } else { c.clone() })
            }),
        );
        Ok(flipped.change_coordinates(self.ring.coord))
    }

    /// φ: (α, β, γ, δ) ↦ (−α, β, −γ, −δ). In either coordinate this negates
    /// the main variable too, so it acts on a monomial by (−1)^(a + c + Σd).
    pub fn phi(&self) -> Self {
        Poly::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| {
                let s = m.a() + m.c() + m.deltas().iter().sum::<u32>();
                (m.clone(), if s % 2 == 1 { c.neg() } else { c.clone() })
            }),
        )
    }

    /// π from n+2 points to n points: δ_{n+1} ↦ −δ_n, δ_{n+2} ↦ δ_n, all
    /// other variables fixed. ω is also fixed because the two new δ's cancel.
    pub fn pi_reduce(&self) -> Result<Self> {
        let big = self.ring.n;
        if big < 3 {
            return Err(invalid("pi_reduce needs at least three delta variables"));
        }
        let n = big - 2;
        let ring = RingDescriptor { n, ..self.ring };
        let mut out = Poly::zero(ring);
        for (m, c) in &self.terms {
            let p = m.d(n + 1);
            let q = m.d(n + 2);
            let mut d: Vec<u32> = m.deltas()[..n].to_vec();
            d[n - 1] += p + q;
            let mono = Monomial::from_parts(m.a(), m.b(), m.c(), &d, m.e());
            out.add_term(mono, if p % 2 == 1 { c.neg() } else { c.clone() });
        }
        Ok(out)
    }

    /// Views a polynomial in α-coordinates inside a ring with more δ's.
    pub fn embed(&self, n: usize) -> Result<Self> {
        if n < self.ring.n {
            return Err(invalid("embed cannot drop delta variables"));
        }
        let src = self.to_alpha();
        let ring = RingDescriptor {
            n,
            ..src.ring
        };
        let extra = n - src.ring.n;
        let mut out = Poly::zero(ring);
        for (m, c) in &src.terms {
            let mut d = m.deltas().to_vec();
            d.extend(std::iter::repeat_n(0, extra));
            out.add_term(Monomial::from_parts(m.a(), m.b(), m.c(), &d, m.e()), c.clone());
        }
        Ok(out)
    }

    /// Evaluates at a point given in the internal slot order
    /// [main, δ_1..δ_n, β, γ, ε]; the main slot is read in this polynomial's
    /// own coordinate.
    pub fn evaluate_slots(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (slot, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[slot].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Evaluates at (α, β, γ, δ_1..δ_n, ε) regardless of the stored coordinate.
    pub fn evaluate(&self, alpha: &C, beta: &C, gamma: &C, deltas: &[C], eps: Option<&C>) -> C {
        assert_eq!(deltas.len(), self.ring.n);
        let main = match self.ring.coord {
            Coord::Alpha => alpha.clone(),
            Coord::Omega => {
                let mut s = alpha.clone();
                let half = frac(1, 2);
                for d in deltas {
                    s = s.add(&d.scale(&half));
                }
                s
            }
        };
        let mut point = vec![main];
        point.extend(deltas.iter().cloned());
        point.push(beta.clone());
        point.push(gamma.clone());
        point.push(eps.cloned().unwrap_or_else(C::zero));
        self.evaluate_slots(&point)
    }
}

impl LPoly {
    /// Substitutes u = value into every coefficient.
    pub fn specialize_u(&self, value: &Rational) -> Result<QPoly> {
        self.try_map_coeffs(|c| c.evaluate(value))
    }

    /// Coefficients that are u-free, as rationals.
    pub fn to_rational(&self) -> Result<QPoly> {
        self.try_map_coeffs(|c| {
            c.constant()
                .ok_or_else(|| invalid("coefficient depends on u"))
        })
    }
}

impl QPoly {
    pub fn to_laurent(&self) -> LPoly {
        self.map_coeffs(|c| LaurentU::from_rational(c.clone()))
    }
}

/// Even-cardinality subsets of {1..n}.
pub fn even_subsets(n: usize) -> Vec<Vec<usize>> {
    subsets(n).into_iter().filter(|s| s.len() % 2 == 0).collect()
}

/// All subsets of {1..n} in binary-counter order.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..(1u32 << n))
        .map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}

pub fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|i| !subset.contains(i)).collect()
}
