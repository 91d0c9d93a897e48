//! Curated algebras, bimodules, and cleft suites used by the verification
//! suite and addressable from manifests as `builtin:<name>`.
//!
//! Every entry is parametric in the field (the modulus only has to exceed
//! the dimensions involved), so the same catalog serves any session prime.

use std::sync::Arc;

use crate::algebra::{path_algebra, Algebra, AlgebraData, Arrow, Quiver, Relation};
use crate::cleft::{morita_context_ring, triangular_matrix_ring, trivial_extension, truncated_tensor_ring, CleftSuite};
use crate::error::{Error, Result};
use crate::exactlinalg::{Fp, Matrix};
use crate::modules::Bimodule;

/// The ground field itself as a one-dimensional algebra.
pub fn field_algebra(field: Fp) -> Result<Arc<Algebra>> {
    Ok(Arc::new(Algebra::new(AlgebraData {
        field,
        basis_names: vec!["1".into()],
        structure: vec![1],
        unit: vec![1],
        idempotents: vec![vec![1]],
        radical: None,
    })?))
}

/// The semisimple algebra k×k (two isolated vertices).
pub fn k_times_k(field: Fp) -> Result<Arc<Algebra>> {
    let q = Quiver { vertices: 2, arrows: vec![] };
    Ok(Arc::new(path_algebra(field, &q, &[], 1)?))
}

/// The dual numbers k[x]/(x²).
pub fn dual_numbers(field: Fp) -> Result<Arc<Algebra>> {
    let q = Quiver {
        vertices: 1,
        arrows: vec![Arrow { source: 0, target: 0, name: "x".into() }],
    };
    Ok(Arc::new(path_algebra(field, &q, &[Relation { terms: vec![(1, vec![0, 0])] }], 2)?))
}

/// The path algebra of A₂: basis e₁, e₂, a with e₁a = a = ae₂.
pub fn ka2(field: Fp) -> Result<Arc<Algebra>> {
    let q = Quiver {
        vertices: 2,
        arrows: vec![Arrow { source: 0, target: 1, name: "a".into() }],
    };
    Ok(Arc::new(path_algebra(field, &q, &[], 2)?))
}

/// The Kronecker algebra: two vertices, two parallel arrows.
pub fn kronecker(field: Fp) -> Result<Arc<Algebra>> {
    let q = Quiver {
        vertices: 2,
        arrows: vec![
            Arrow { source: 0, target: 1, name: "a".into() },
            Arrow { source: 0, target: 1, name: "b".into() },
        ],
    };
    Ok(Arc::new(path_algebra(field, &q, &[], 2)?))
}

/// E2's bimodule over k×k: one-dimensional, left support e₂, right
/// support e₁, so that the trivial extension is kA₂ up to relabeling.
pub fn e2_bimodule(gamma: &Arc<Algebra>) -> Result<Bimodule> {
    let f = gamma.field();
    let one = Matrix::identity(f, 1);
    let zero = Matrix::zero(f, 1, 1);
    Bimodule::new(gamma.clone(), gamma.clone(), 1, vec![zero.clone(), one.clone()], vec![one, zero])
}

/// E2: Γ = k×k, Λ = Γ⋉M ≅ kA₂.
pub fn e2_suite(field: Fp) -> Result<CleftSuite> {
    let gamma = k_times_k(field)?;
    let m = e2_bimodule(&gamma)?;
    trivial_extension(&gamma, &m)
}

/// E3's ingredient bimodule: N = A as an (A, k)-bimodule for
/// A = k[x]/(x²).
pub fn e3_bimodule(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Bimodule> {
    let f = a.field();
    let left = (0..a.dim()).map(|i| a.left_mult_basis(i)).collect();
    let right = vec![Matrix::identity(f, a.dim()); b.dim()];
    Bimodule::new(a.clone(), b.clone(), a.dim(), left, right)
}

/// E3: the triangular matrix ring (A A; 0 k) with A = k[x]/(x²), a
/// five-dimensional algebra over Γ = A×k.
pub fn e3_suite(field: Fp) -> Result<CleftSuite> {
    let a = dual_numbers(field)?;
    let b = field_algebra(field)?;
    let n = e3_bimodule(&a, &b)?;
    triangular_matrix_ring(&a, &b, &n)
}

/// E4's bimodule over kA₂: M = Γe₁ ⊗_k e₂Γ, one-dimensional with left
/// support e₁ and right support e₂.
pub fn e4_bimodule(gamma: &Arc<Algebra>) -> Result<Bimodule> {
    let f = gamma.field();
    let one = Matrix::identity(f, 1);
    let zero = Matrix::zero(f, 1, 1);
    Bimodule::new(
        gamma.clone(),
        gamma.clone(),
        1,
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), one, zero],
    )
}

/// E4: the truncated tensor ring of kA₂ by the projective bimodule
/// Γe₁⊗e₂Γ — the arrow-adjunction suite whose Λ is the Kronecker algebra.
pub fn e4_suite(field: Fp) -> Result<CleftSuite> {
    let gamma = ka2(field)?;
    let m = e4_bimodule(&gamma)?;
    truncated_tensor_ring(&gamma, &m, 8)
}

/// E6's bimodule: M = k over k[x]/(x²) with x annihilating both sides.
pub fn e6_bimodule(gamma: &Arc<Algebra>) -> Result<Bimodule> {
    let f = gamma.field();
    let one = Matrix::identity(f, 1);
    let zero = Matrix::zero(f, 1, 1);
    Bimodule::new(gamma.clone(), gamma.clone(), 1, vec![one.clone(), zero.clone()], vec![one, zero])
}

/// E6: Γ = k[x]/(x²), Λ = Γ⋉k — the counterexample gate: M is not
/// ⊗-nilpotent, so no transfer theorem applies.
pub fn e6_suite(field: Fp) -> Result<CleftSuite> {
    let gamma = dual_numbers(field)?;
    let m = e6_bimodule(&gamma)?;
    trivial_extension(&gamma, &m)
}

/// The dimension-six Morita context ring over A = B = k×k with
/// one-dimensional N (left e₁, right e₁) and M (left e₂, right e₂), whose
/// crossed products N⊗M and M⊗N both vanish.
pub fn morita_dim6_suite(field: Fp) -> Result<CleftSuite> {
    let a = k_times_k(field)?;
    let b = k_times_k(field)?;
    let one = Matrix::identity(field, 1);
    let zero = Matrix::zero(field, 1, 1);
    let n = Bimodule::new(a.clone(), b.clone(), 1, vec![one.clone(), zero.clone()], vec![one.clone(), zero.clone()])?;
    let m = Bimodule::new(b.clone(), a.clone(), 1, vec![zero.clone(), one.clone()], vec![zero, one])?;
    morita_context_ring(&a, &b, &n, &m)
}

/// Names accepted by `builtin_algebra`.
pub const ALGEBRA_NAMES: &[&str] =
    &["f101", "k-times-k", "dual-numbers", "ka2", "kronecker", "e3-triangular", "morita-dim6"];

/// Names accepted by `builtin_suite`.
pub const SUITE_NAMES: &[&str] = &["e2", "e3", "e4", "e6", "morita-dim6"];

/// Names accepted by `builtin_bimodule`.
pub const BIMODULE_NAMES: &[&str] = &["e2", "e3-n", "e4", "e6", "morita-n", "morita-m"];

/// Resolve a curated algebra by name.
pub fn builtin_algebra(name: &str, field: Fp) -> Result<Arc<Algebra>> {
    match name {
        "f101" => field_algebra(field),
        "k-times-k" => k_times_k(field),
        "dual-numbers" => dual_numbers(field),
        "ka2" => ka2(field),
        "kronecker" => kronecker(field),
        "e3-triangular" => Ok(e3_suite(field)?.lambda),
        "morita-dim6" => Ok(morita_dim6_suite(field)?.lambda),
        other => Err(Error::InputError(format!("unknown builtin algebra {other:?}"))),
    }
}

/// Resolve a curated suite by name.
pub fn builtin_suite(name: &str, field: Fp) -> Result<CleftSuite> {
    match name {
        "e2" => e2_suite(field),
        "e3" => e3_suite(field),
        "e4" => e4_suite(field),
        "e6" => e6_suite(field),
        "morita-dim6" => morita_dim6_suite(field),
        other => Err(Error::InputError(format!("unknown builtin suite {other:?}"))),
    }
}

/// Resolve a curated bimodule by name, over the matching curated algebras.
pub fn builtin_bimodule(name: &str, field: Fp) -> Result<Bimodule> {
    let one = Matrix::identity(field, 1);
    let zero = Matrix::zero(field, 1, 1);
    match name {
        "e2" => e2_bimodule(&k_times_k(field)?),
        "e3-n" => e3_bimodule(&dual_numbers(field)?, &field_algebra(field)?),
        "e4" => e4_bimodule(&ka2(field)?),
        "e6" => e6_bimodule(&dual_numbers(field)?),
        "morita-n" => Bimodule::new(
            k_times_k(field)?,
            k_times_k(field)?,
            1,
            vec![one.clone(), zero.clone()],
            vec![one, zero],
        ),
        "morita-m" => Bimodule::new(
            k_times_k(field)?,
            k_times_k(field)?,
            1,
            vec![zero.clone(), one.clone()],
            vec![zero, one],
        ),
        other => Err(Error::InputError(format!("unknown builtin bimodule {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn curated_algebras_have_the_pinned_dimensions() {
        assert_eq!(field_algebra(f101()).unwrap().dim(), 1);
        assert_eq!(k_times_k(f101()).unwrap().dim(), 2);
        assert_eq!(dual_numbers(f101()).unwrap().dim(), 2);
        assert_eq!(ka2(f101()).unwrap().dim(), 3);
        assert_eq!(kronecker(f101()).unwrap().dim(), 4);
    }

    #[test]
    fn curated_suites_have_the_pinned_dimensions() {
        assert_eq!(e2_suite(f101()).unwrap().lambda.dim(), 3);
        assert_eq!(e3_suite(f101()).unwrap().lambda.dim(), 5);
        assert_eq!(e4_suite(f101()).unwrap().lambda.dim(), 4);
        assert_eq!(e6_suite(f101()).unwrap().lambda.dim(), 3);
        assert_eq!(morita_dim6_suite(f101()).unwrap().lambda.dim(), 6);
    }

    #[test]
    fn e4_lambda_table_equals_the_kronecker_table() {
        let suite = e4_suite(f101()).unwrap();
        let kron = kronecker(f101()).unwrap();
        // Λ basis: e₁, e₂, a (the kA₂ arrow), m; Kronecker basis:
        // e₁, e₂, a, b. The structure constants coincide entry for entry.
        assert_eq!(suite.lambda.structure(), kron.structure());
    }

    #[test]
    fn every_builtin_name_resolves() {
        for name in ALGEBRA_NAMES {
            assert!(builtin_algebra(name, f101()).is_ok(), "algebra {name} must resolve");
        }
        for name in SUITE_NAMES {
            assert!(builtin_suite(name, f101()).is_ok(), "suite {name} must resolve");
        }
        for name in BIMODULE_NAMES {
            assert!(builtin_bimodule(name, f101()).is_ok(), "bimodule {name} must resolve");
        }
        assert!(builtin_algebra("nope", f101()).is_err());
        assert!(builtin_suite("nope", f101()).is_err());
        assert!(builtin_bimodule("nope", f101()).is_err());
    }

    #[test]
    fn small_primes_are_rejected_when_dimensions_exceed_them() {
        let tiny = Fp::new(3).unwrap();
        assert!(e3_suite(tiny).is_err(), "p = 3 cannot carry a dim-5 construction");
    }
}
