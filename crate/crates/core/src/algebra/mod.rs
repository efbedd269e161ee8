//! Exact arithmetic in `F_q` inside `F_{q^2}` and square matrices over it.

mod field;
mod forms;
mod mat;

pub use field::{is_prime, Fe, Field, MAX_FIELD_ORDER};
pub use forms::{alpha_twist, satisfies, FlipIdentity, FormKind};
pub use mat::Mat;

/// `true` iff `conj(A)^T Q_n A = Q_n`, the unitary condition for the
/// skew-diagonal form.
pub fn is_unitary(a: &Mat, f: &Field) -> bool {
    let q = Mat::skew_identity(a.dim());
    a.conj(f).transpose().mul(&q, f).mul(a, f) == q
}
