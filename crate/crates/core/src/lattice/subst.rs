use num_traits::One;

use super::{LaurentPolynomial, Monomial, Q};

/// Ring homomorphism sending each source variable's square root to a signed
/// monomial in a target lattice.
///
/// Specifying the image of `v^(1/2)` (rather than `v`) keeps half-integer
/// exponents well defined and makes branch choices explicit: a sign of `-1`
/// on the half-root flips every odd stored exponent.
#[derive(Debug, Clone)]
pub struct MonomialMap {
    target_nvars: usize,
    half_images: Vec<(bool, Monomial)>,
}

impl MonomialMap {
    /// Identity on `nvars` variables.
    pub fn identity(nvars: usize) -> Self {
        MonomialMap {
            target_nvars: nvars,
            half_images: (0..nvars)
                .map(|i| {
                    let mut m = Monomial::one(nvars);
                    m.doubled_mut()[i] = 1;
                    (false, m)
                })
                .collect(),
        }
    }

    /// Map with the image of each `v_i` given as a monomial whose stored
    /// exponents are all even (so the half-root image is well defined).
    pub fn from_full_images(target_nvars: usize, images: Vec<Monomial>) -> Self {
        let half_images = images
            .into_iter()
            .map(|m| {
                assert_eq!(m.nvars(), target_nvars);
                let h = m
                    .sqrt()
                    .expect("full image must have an exact square root on the lattice");
                (false, h)
            })
            .collect();
        MonomialMap {
            target_nvars,
            half_images,
        }
    }

    /// Set the image of `v_i^(1/2)` directly, with an optional sign flip.
    pub fn set_half_image(&mut self, i: usize, negate: bool, half: Monomial) {
        assert_eq!(half.nvars(), self.target_nvars);
        self.half_images[i] = (negate, half);
    }

    /// Replace the image of `v_i` (its square root must exist on the lattice).
    pub fn set_image(&mut self, i: usize, full: Monomial) {
        let h = full
            .sqrt()
            .expect("image must have an exact square root on the lattice");
        self.half_images[i] = (false, h);
    }

    pub fn source_nvars(&self) -> usize {
        self.half_images.len()
    }

    pub fn target_nvars(&self) -> usize {
        self.target_nvars
    }

    /// Image of a monomial as a signed single-term polynomial.
    pub fn apply_monomial(&self, m: &Monomial) -> LaurentPolynomial {
        assert_eq!(m.nvars(), self.half_images.len(), "source dimension mismatch");
        let mut out = Monomial::one(self.target_nvars);
        let mut negative = false;
        for (&k, (neg, half)) in m.doubled().iter().zip(&self.half_images) {
            if k == 0 {
                continue;
            }
            out = out.mul(&half.pow(k));
            if *neg && k % 2 != 0 {
                negative = !negative;
            }
        }
        let c = if negative { -Q::one() } else { Q::one() };
        LaurentPolynomial::monomial(out, c)
    }

    pub fn apply(&self, p: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.target_nvars);
        for (m, c) in p.terms() {
            let img = self.apply_monomial(m);
            let (im, ic) = img.as_term().unwrap();
            out.add_term(im.clone(), ic * c);
        }
        out
    }
}
