use num_traits::{One, Zero};

use super::HilbertError;
use crate::lattice::{LaurentPolynomial, Monomial, Q};
use crate::partition::{Partition, PlanePartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangentSource {
    ClosedForm,
    ArmLeg,
    HilbFree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCharacter {
    pub value: LaurentPolynomial,
    pub source: TangentSource,
}

fn one_minus_product(t: &[&Monomial]) -> LaurentPolynomial {
    let n = t[0].nvars();
    let mut acc = LaurentPolynomial::one(n);
    for m in t {
        let f = LaurentPolynomial::from_terms(
            n,
            [(Monomial::one(n), Q::one()), ((*m).clone(), -Q::one())],
        );
        acc = &acc * &f;
    }
    acc
}

/// `V + V̄ t1 t2 - V V̄ (1-t1)(1-t2)`.
pub fn tangent_c2_closed(lambda: &Partition, t: [&Monomial; 2]) -> TangentCharacter {
    let v = lambda.character(t);
    let vb = v.bar();
    let t12 = t[0].mul(t[1]);
    let value = &(&v + &vb.mul_monomial(&t12)) - &(&(&v * &vb) * &one_minus_product(&t));
    TangentCharacter {
        value,
        source: TangentSource::ClosedForm,
    }
}

/// `sum_□ t1^{-l} t2^{a+1} + t1^{l+1} t2^{-a}`.
pub fn tangent_c2_armleg(lambda: &Partition, t: [&Monomial; 2]) -> TangentCharacter {
    let n = t[0].nvars();
    let mut value = LaurentPolynomial::zero(n);
    for (i, j) in lambda.boxes() {
        let a = lambda.arm(i, j).expect("box of the diagram") as i32;
        let l = lambda.leg(i, j).expect("box of the diagram") as i32;
        value.add_term(t[0].pow(-l).mul(&t[1].pow(a + 1)), Q::one());
        value.add_term(t[0].pow(l + 1).mul(&t[1].pow(-a)), Q::one());
    }
    TangentCharacter {
        value,
        source: TangentSource::ArmLeg,
    }
}

/// `T^vir = V - κ V̄ - V V̄ (1-t1)(1-t2)(1-t3)`.
pub fn virtual_tangent_c3(
    pi: &PlanePartition,
    t: [&Monomial; 3],
) -> Result<TangentCharacter, HilbertError> {
    let v = pi.character(t);
    let vb = v.bar();
    let kappa = t[0].mul(t[1]).mul(t[2]);
    let value = &(&v - &vb.mul_monomial(&kappa)) - &(&(&v * &vb) * &one_minus_product(&t));
    if !value.constant_term().is_zero() {
        return Err(HilbertError::TrivialWeightInTvir);
    }
    Ok(TangentCharacter {
        value,
        source: TangentSource::ClosedForm,
    })
}

/// Route through the Hilbert scheme of the free algebra:
/// `T = (t1+t2+t3-1) V̄ V + V`, then `T^vir = T - κ T̄`.
pub fn virtual_tangent_c3_free(pi: &PlanePartition, t: [&Monomial; 3]) -> TangentCharacter {
    let n = t[0].nvars();
    let v = pi.character(t);
    let vb = v.bar();
    let mut c3 = LaurentPolynomial::constant(n, -Q::one());
    for m in &t {
        c3.add_term((*m).clone(), Q::one());
    }
    let free = &(&(&c3 * &vb) * &v) + &v;
    let kappa = t[0].mul(t[1]).mul(t[2]);
    TangentCharacter {
        value: &free - &free.bar().mul_monomial(&kappa),
        source: TangentSource::HilbFree,
    }
}
