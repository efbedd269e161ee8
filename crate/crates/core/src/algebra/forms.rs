//! Persymmetric-family predicates and the flip-transpose identities.

use super::field::{Fe, Field};
use super::mat::Mat;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub enum FormKind<'a> {
    /// `B^F = B`
    Persymmetric,
    /// `B^F = -B`
    SkewPersymmetric,
    /// `conj(B)^F = -B`
    ConjSkewPersymmetric,
    /// `B + conj(B)^F = -Q conj(alpha)^T alpha` for a row vector `alpha`.
    AlphaConjSkewPersymmetric(&'a [Fe]),
}

/// `-Q conj(alpha)^T alpha`, the right-hand side of the alpha-twisted form.
pub fn alpha_twist(alpha: &[Fe], f: &Field) -> Mat {
    let m = alpha.len();
    Mat::skew_identity(m)
        .mul(&Mat::conj_outer(alpha, alpha, f), f)
        .neg(f)
}

pub fn satisfies(b: &Mat, kind: FormKind<'_>, f: &Field) -> Result<bool> {
    Ok(match kind {
        FormKind::Persymmetric => b.flip_transpose() == *b,
        FormKind::SkewPersymmetric => b.flip_transpose() == b.neg(f),
        FormKind::ConjSkewPersymmetric => b.conj(f).flip_transpose() == b.neg(f),
        FormKind::AlphaConjSkewPersymmetric(alpha) => {
            if alpha.len() != b.dim() {
                return Err(Error::DimensionMismatch {
                    expected: b.dim(),
                    found: alpha.len(),
                });
            }
            b.add(&b.conj(f).flip_transpose(), f) == alpha_twist(alpha, f)
        }
    })
}

/// Which flip-transpose identity to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipIdentity {
    /// `Q^2 = 1`
    SkewIdentitySquare,
    /// persymmetric iff `QB` symmetric iff `BQ` symmetric, and the skew analogue.
    PersymmetricViaQ,
    /// `Q B^T Q = B^F`
    ConjugatedTranspose,
    /// `(BC)^F = C^F B^F`
    ProductReversal,
    /// `(B^F)^{-1} = (B^{-1})^F`
    InverseCommutes,
}

impl FlipIdentity {
    pub const ALL: [FlipIdentity; 5] = [
        FlipIdentity::SkewIdentitySquare,
        FlipIdentity::PersymmetricViaQ,
        FlipIdentity::ConjugatedTranspose,
        FlipIdentity::ProductReversal,
        FlipIdentity::InverseCommutes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FlipIdentity::SkewIdentitySquare => "skew_identity_square",
            FlipIdentity::PersymmetricViaQ => "persymmetric_via_q",
            FlipIdentity::ConjugatedTranspose => "conjugated_transpose",
            FlipIdentity::ProductReversal => "product_reversal",
            FlipIdentity::InverseCommutes => "inverse_commutes",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            FlipIdentity::SkewIdentitySquare => "Q^2 = 1",
            FlipIdentity::PersymmetricViaQ => {
                "B^F = B <=> QB, BQ symmetric; B^F = -B <=> QB, BQ skew-symmetric"
            }
            FlipIdentity::ConjugatedTranspose => "Q B^T Q = B^F",
            FlipIdentity::ProductReversal => "(BC)^F = C^F B^F",
            FlipIdentity::InverseCommutes => "(B^F)^-1 = (B^-1)^F",
        }
    }

    /// Checks the identity on the sample `(b, c)`. Returns `None` when the
    /// sample does not apply (a singular `b` for the inverse identity).
    pub fn check(self, b: &Mat, c: &Mat, f: &Field) -> Option<bool> {
        let m = b.dim();
        let q = Mat::skew_identity(m);
        match self {
            FlipIdentity::SkewIdentitySquare => Some(q.mul(&q, f) == Mat::identity(m)),
            FlipIdentity::PersymmetricViaQ => {
                // Random matrices are almost never persymmetric, so the
                // sample is also projected onto both families.
                let sym = b.add(&b.flip_transpose(), f);
                let skew = b.sub(&b.flip_transpose(), f);
                let ok = |x: &Mat| {
                    let per = x.flip_transpose() == *x;
                    let skew_per = x.flip_transpose() == x.neg(f);
                    let qx = q.mul(x, f);
                    let xq = x.mul(&q, f);
                    per == qx.is_symmetric()
                        && per == xq.is_symmetric()
                        && skew_per == qx.is_skew_symmetric(f)
                        && skew_per == xq.is_skew_symmetric(f)
                };
                Some(ok(b) && ok(&sym) && ok(&skew) && sym.flip_transpose() == sym)
            }
            FlipIdentity::ConjugatedTranspose => {
                Some(q.mul(&b.transpose(), f).mul(&q, f) == b.flip_transpose())
            }
            FlipIdentity::ProductReversal => {
                Some(b.mul(c, f).flip_transpose() == c.flip_transpose().mul(&b.flip_transpose(), f))
            }
            FlipIdentity::InverseCommutes => {
                let inv = b.inverse(f).ok()?;
                let lhs = b.flip_transpose().inverse(f).ok()?;
                Some(lhs == inv.flip_transpose())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat(dim: usize, f: &Field, rng: &mut ChaCha8Rng) -> Mat {
        let e: Vec<Fe> = (0..dim * dim)
            .map(|_| Fe(rng.random_range(0..f.size()) as u16))
            .collect();
        Mat::from_entries(dim, &e).unwrap()
    }

    #[test]
    fn zero_matrix_satisfies_every_form() {
        let f = Field::new(5, 1).unwrap();
        let z = Mat::zeros(3);
        let alpha = [Fe::ZERO; 3];
        for kind in [
            FormKind::Persymmetric,
            FormKind::SkewPersymmetric,
            FormKind::ConjSkewPersymmetric,
            FormKind::AlphaConjSkewPersymmetric(&alpha),
        ] {
            assert!(satisfies(&z, kind, &f).unwrap());
        }
    }

    #[test]
    fn conj_skew_persymmetric_count_is_q_to_the_m_squared() {
        // (q, m) = (5, 2): exhaustive over all 25^4 matrices.
        let f = Field::new(5, 1).unwrap();
        let s = f.size() as u16;
        let mut count = 0;
        for a in 0..s {
            for b in 0..s {
                for c in 0..s {
                    for d in 0..s {
                        let m = Mat::from_entries(2, &[Fe(a), Fe(b), Fe(c), Fe(d)]).unwrap();
                        if satisfies(&m, FormKind::ConjSkewPersymmetric, &f).unwrap() {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 625);
    }

    #[test]
    fn zero_alpha_twist_is_plain_conj_skew() {
        let f = Field::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let zero = [Fe::ZERO; 2];
        for _ in 0..1000 {
            let mut m = random_mat(2, &f, &mut rng);
            // Bias half the samples into the family so both answers occur.
            if rng.random_bool(0.5) {
                m = m.sub(&m.conj(&f).flip_transpose(), &f);
            }
            assert_eq!(
                satisfies(&m, FormKind::AlphaConjSkewPersymmetric(&zero), &f).unwrap(),
                satisfies(&m, FormKind::ConjSkewPersymmetric, &f).unwrap()
            );
        }
    }

    #[test]
    fn alpha_dimension_mismatch() {
        let f = Field::new(5, 1).unwrap();
        let alpha = [Fe::ZERO; 3];
        assert!(matches!(
            satisfies(&Mat::zeros(2), FormKind::AlphaConjSkewPersymmetric(&alpha), &f),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn flip_identities_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(5, 1), (5, 2), (2, 1)] {
            let f = Field::new(p, k).unwrap();
            for m in 1..=4 {
                for _ in 0..200 {
                    let b = random_mat(m, &f, &mut rng);
                    let c = random_mat(m, &f, &mut rng);
                    for id in FlipIdentity::ALL {
                        assert_ne!(id.check(&b, &c, &f), Some(false), "{id:?} m={m}");
                    }
                }
            }
        }
    }
}
