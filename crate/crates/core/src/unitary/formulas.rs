//! Closed-form products, inverses and commutators of Sylow elements.

use super::{Parity, SylowElem, UnitarySylow};
use crate::algebra::Mat;
use crate::error::{Error, Result};

fn require_even(s: &UnitarySylow, what: &str) -> Result<()> {
    match s.params().parity() {
        Parity::Even => Ok(()),
        Parity::Odd => Err(Error::InvalidParams(format!(
            "{what} has a closed form only for even n; use sylow_mul"
        ))),
    }
}

/// `(conj(D)^F)^{-1}`.
fn bar_flip_inv(d: &Mat, s: &UnitarySylow) -> Mat {
    let f = s.field();
    d.conj(f).flip_transpose().inverse_unitriangular(f)
}

/// `X_{D,P} X_{D',P'} = X_{DD', D'^{-1} P (conj(D')^F)^{-1} + P'}`.
pub fn mul_formula(s: &UnitarySylow, x: &SylowElem, y: &SylowElem) -> Result<SylowElem> {
    require_even(s, "the product")?;
    s.encode(x)?;
    s.encode(y)?;
    let f = s.field();
    let d = x.d.mul(&y.d, f);
    let p = y
        .d
        .inverse_unitriangular(f)
        .mul(&x.p, f)
        .mul(&bar_flip_inv(&y.d, s), f)
        .add(&y.p, f);
    Ok(SylowElem::even(d, p))
}

/// `X_{D,P}^{-1} = X_{D^{-1}, -D P conj(D)^F}`.
pub fn inverse_formula(s: &UnitarySylow, x: &SylowElem) -> Result<SylowElem> {
    require_even(s, "the inverse")?;
    s.encode(x)?;
    let f = s.field();
    let p = x.d.mul(&x.p, f).mul(&x.d.conj(f).flip_transpose(), f).neg(f);
    Ok(SylowElem::even(x.d.inverse_unitriangular(f), p))
}

/// `[x, y] = x^{-1} y^{-1} x y` by the closed forms that exist:
///
/// - even `n`, `x = X_{1,P}`: `X_{1, D^{-1} P (conj(D)^F)^{-1} - P}`;
/// - odd `n`, `x = X_{1,P,alpha}` and `y = X_{1,P',alpha'}`:
///   `X_{1, Q conj(alpha')^T alpha - Q conj(alpha)^T alpha', 0}`;
/// - odd `n`, `x = X_{1,P,0}`: `X_{1, -P + D^{-1} P (conj(D)^F)^{-1}, 0}`.
///
/// Any other shape is an error.
pub fn comm_formula(s: &UnitarySylow, x: &SylowElem, y: &SylowElem) -> Result<SylowElem> {
    s.encode(x)?;
    s.encode(y)?;
    let f = s.field();
    let m = s.params().m();
    if !x.d.is_identity() {
        return Err(Error::Shape("the first argument needs D = 1".into()));
    }
    let conjugated = || {
        y.d.inverse_unitriangular(f)
            .mul(&x.p, f)
            .mul(&bar_flip_inv(&y.d, s), f)
            .sub(&x.p, f)
    };
    match s.params().parity() {
        Parity::Even => Ok(SylowElem::even(Mat::identity(m), conjugated())),
        Parity::Odd if x.alpha_is_zero() => Ok(SylowElem::odd(
            Mat::identity(m),
            conjugated(),
            vec![crate::algebra::Fe::ZERO; m],
        )),
        Parity::Odd if y.d.is_identity() => {
            let q = Mat::skew_identity(m);
            let p = q
                .mul(&Mat::conj_outer(&y.alpha, &x.alpha, f), f)
                .sub(&q.mul(&Mat::conj_outer(&x.alpha, &y.alpha, f), f), f);
            Ok(SylowElem::odd(
                Mat::identity(m),
                p,
                vec![crate::algebra::Fe::ZERO; m],
            ))
        }
        Parity::Odd => Err(Error::Shape(
            "odd commutators need alpha = 0 in the first argument or D = 1 in both".into(),
        )),
    }
}

/// General product: the closed form for even `n`, the matrix route for odd `n`.
pub fn sylow_mul(s: &UnitarySylow, x: &SylowElem, y: &SylowElem) -> Result<SylowElem> {
    match s.params().parity() {
        Parity::Even => mul_formula(s, x, y),
        Parity::Odd => {
            s.encode(x)?;
            s.encode(y)?;
            let f = s.field();
            s.decompose(&s.embed(x).mul(&s.embed(y), f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fe;
    use crate::unitary::UnitaryParams;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn group(q: u32, n: usize) -> UnitarySylow {
        UnitarySylow::new(UnitaryParams::new(5, q, n).unwrap(), 1 << 24).unwrap()
    }

    fn random(s: &UnitarySylow, rng: &mut ChaCha8Rng) -> SylowElem {
        s.decode(rng.random_range(0..crate::group::GroupRepr::order(s) as u64))
    }

    /// Matrix-product oracle for `x^{-1} y^{-1} x y`.
    fn matrix_comm(s: &UnitarySylow, x: &SylowElem, y: &SylowElem) -> Mat {
        let f = s.field();
        let (a, b) = (s.embed(x), s.embed(y));
        a.inverse(f)
            .unwrap()
            .mul(&b.inverse(f).unwrap(), f)
            .mul(&a, f)
            .mul(&b, f)
    }

    #[test]
    fn products_match_matrices() {
        let s = group(5, 4);
        let f = s.field();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let (x, y) = (random(&s, &mut rng), random(&s, &mut rng));
            let z = mul_formula(&s, &x, &y).unwrap();
            assert_eq!(s.embed(&z), s.embed(&x).mul(&s.embed(&y), f));
            let xi = inverse_formula(&s, &x).unwrap();
            assert!(s.embed(&mul_formula(&s, &x, &xi).unwrap()).is_identity());
        }
    }

    #[test]
    fn d_trivial_products_add() {
        let s = group(5, 4);
        let f = s.field();
        let n = s.d_trivial_count();
        for i in (0..n).step_by(37) {
            for j in (0..n).step_by(53) {
                let (x, y) = (s.decode(i), s.decode(j));
                let z = mul_formula(&s, &x, &y).unwrap();
                assert!(z.d.is_identity());
                assert_eq!(z.p, x.p.add(&y.p, f));
            }
        }
    }

    #[test]
    fn commutators_match_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (q, n) in [(5, 4), (5, 5), (5, 3), (25, 3)] {
            let s = group(q, n);
            let a_count = s.d_trivial_count();
            let a0_count = s.alpha_free_count();
            for _ in 0..300 {
                let y = random(&s, &mut rng);
                let x = s.decode(rng.random_range(0..a0_count));
                let c = comm_formula(&s, &x, &y).unwrap();
                assert_eq!(s.embed(&c), matrix_comm(&s, &x, &y));
                let x = s.decode(rng.random_range(0..a_count));
                let y = s.decode(rng.random_range(0..a_count));
                let c = comm_formula(&s, &x, &y).unwrap();
                assert_eq!(s.embed(&c), matrix_comm(&s, &x, &y));
            }
        }
    }

    #[test]
    fn odd_commutator_worked_example() {
        // m = 1, q = 5: alpha = 1 and alpha' = sqrt(2) give -2 sqrt(2).
        let s = group(5, 3);
        let f = s.field();
        let sqrt2 = f.elements().find(|&x| f.mul(x, x) == f.from_int(2)).unwrap();
        let one = Mat::identity(1);
        let lift = |alpha: Fe| {
            // Smallest P solving P + conj(P) = -N(alpha).
            let c = f.neg(f.mul(f.conj(alpha), alpha));
            Mat::from_entries(1, &[f.trace_lift(c).unwrap()]).unwrap()
        };
        let x = SylowElem::odd(one.clone(), lift(Fe::ONE), vec![Fe::ONE]);
        let y = SylowElem::odd(one, lift(sqrt2), vec![sqrt2]);
        let c = comm_formula(&s, &x, &y).unwrap();
        assert_eq!(c.p.get(0, 0), f.neg(f.mul(f.from_int(2), sqrt2)));
        assert_eq!(s.embed(&c), matrix_comm(&s, &x, &y));
    }

    #[test]
    fn shape_errors() {
        let s = group(5, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = loop {
            let x = random(&s, &mut rng);
            if !x.d.is_identity() {
                break x;
            }
        };
        assert!(matches!(comm_formula(&s, &x, &x), Err(Error::Shape(_))));
        assert!(mul_formula(&s, &x, &x).is_err());
        assert!(sylow_mul(&s, &x, &x).is_ok());
    }
}
