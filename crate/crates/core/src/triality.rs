//! The triality automorphism `φ = ξ_* ∘ (δ⁺_*)⁻¹` of `𝔰𝔬(8)`.
//!
//! `δ⁺_*(½e_ie_j)` is `½G_iG_j` restricted to the `+1` eigenspace of the
//! `Cl_8` volume, and `ξ_*(½e_ie_j) = E_ij` is the elementary rotation
//! taking `e_i` to `e_j`.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::report::VerificationReport;
use crate::spin::{build_clifford_rep, JFamily};
use crate::structure::verify_family;

const N: usize = 8;
const DIM: usize = 28;

#[derive(Debug, Clone)]
pub struct Triality {
    /// `φ` in the coordinates of [`Matrix::skew_coords`].
    pub coords: Matrix,
    /// `δ⁺_*(½e_ie_j)` for `i < j`, in pair order.
    pub half_spin: Vec<Matrix>,
    /// `J'_ij = φ(2E_ij)`.
    pub pulled_back: JFamily,
    pub certificate: VerificationReport,
}

impl Triality {
    pub fn apply(&self, a: &Matrix) -> Matrix {
        assert!(a.nrows() == N && a.is_skew(), "φ acts on skew 8×8 matrices");
        Matrix::from_skew_coords(N, &self.coords.mul_vec(&a.skew_coords()))
    }
}

fn pairs() -> Vec<(usize, usize)> {
    (0..N).flat_map(|a| (a + 1..N).map(move |b| (a, b))).collect()
}

fn rotation_basis() -> Vec<Matrix> {
    pairs().into_iter().map(|(a, b)| Matrix::elementary_rotation(N, a, b)).collect()
}

pub fn triality_map() -> Result<Triality> {
    let rep = build_clifford_rep(8, 1)?;
    let g = &rep.generators;
    let omega = rep.volume()?;
    let plus = linalg::eigenspace(&omega, Rational::ONE);
    if plus.ncols() != N {
        return Err(Error::Invariant("half-spin space is not 8-dimensional".into()));
    }
    let half = Rational::new(1, 2);
    let half_spin: Vec<Matrix> = pairs()
        .into_iter()
        .map(|(a, b)| linalg::restrict_to_subspace(&g[a].matmul(&g[b]).scale(half), &plus))
        .collect();
    let d = linalg::from_columns(DIM, &half_spin.iter().map(Matrix::skew_coords).collect::<Vec<_>>());
    let vector = rotation_basis();
    let x = linalg::from_columns(DIM, &vector.iter().map(Matrix::skew_coords).collect::<Vec<_>>());
    let d_inv = linalg::inverse(&d).ok_or_else(|| Error::Invariant("half-spin images are linearly dependent".into()))?;
    let coords = x.matmul(&d_inv);

    let mut certificate = VerificationReport::new("triality");
    certificate.check_flag("bijective", &[], linalg::rank(&coords) == DIM);
    let mut tri = Triality { coords, half_spin, pulled_back: JFamily::from_fn(N, N, |_, _| Matrix::zeros(N, N)), certificate };
    for (p, (a, b)) in pairs().into_iter().enumerate() {
        let image = tri.apply(&tri.half_spin[p]);
        tri.certificate.check_eq("phi(delta+(e_ie_j/2)) = E_ij", &[a + 1, b + 1], &image, &vector[p]);
    }
    let images: Vec<Matrix> = vector.iter().map(|e| tri.apply(e)).collect();
    for p in 0..DIM {
        for q in p + 1..DIM {
            let lhs = tri.apply(&vector[p].commutator(&vector[q]));
            let rhs = images[p].commutator(&images[q]);
            tri.certificate.check_eq("phi([A,B]) = [phi(A),phi(B)]", &[p, q], &lhs, &rhs);
        }
    }
    let two = Rational::from_int(2);
    let pulled_back = JFamily::from_fn(N, N, |i, j| images[pair_index(i - 1, j - 1)].scale(two));
    let mut rel = verify_family(&pulled_back);
    for f in &mut rel.failures {
        f.relation = format!("pulled back: {}", f.relation);
    }
    tri.certificate.absorb(rel);
    tri.pulled_back = pulled_back;
    Ok(tri)
}

/// Position of `(a, b)`, `a < b`, in lexicographic pair order.
fn pair_index(a: usize, b: usize) -> usize {
    a * (2 * N - a - 1) / 2 + (b - a - 1)
}
