//! Finite-dimensional associative unital algebras over 𝔽_p, given by
//! structure-constant tables.
//!
//! The scope is deliberately restricted to *split basic* algebras: a complete
//! set of primitive orthogonal idempotents is supplied with the table, and
//! the semisimple quotient by the Jacobson radical must be ≅ 𝔽_p^r with
//! r = number of idempotents. This makes every simple module one-dimensional
//! and projective covers algorithmic, and it is preserved by every
//! constructor in the crate (opposite, product, enveloping, path algebras,
//! θ-extensions).
//!
//! The Jacobson radical is computed as the radical of the trace bilinear form
//! T(x, y) = Tr(L_x L_y), which equals the Jacobson radical whenever
//! p > dim — a precondition enforced at construction time.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlinalg::{Fp, Matrix, Subspace};

/// A finite-dimensional associative unital 𝔽_p-algebra with chosen basis
/// b_0, …, b_{d−1}, structure constants b_i·b_j = Σ_k c[i][j][k]·b_k, a unit
/// vector, a complete set of orthogonal idempotents, and a radical basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    field: Fp,
    dim: usize,
    basis_names: Vec<String>,
    /// Flattened d³ table, index `(i·d + j)·d + k`.
    structure: Vec<u64>,
    unit: Vec<u64>,
    idempotents: Vec<Vec<u64>>,
    radical: Subspace,
}

/// One violated algebra invariant, with enough data to locate it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraViolation {
    FieldTooSmall { p: u64, dim: usize },
    /// (b_i·b_j)·b_l ≠ b_i·(b_j·b_l).
    Associativity { i: usize, j: usize, l: usize },
    /// 1·b_i ≠ b_i or b_i·1 ≠ b_i.
    UnitLaw { index: usize },
    IdempotentNotIdempotent { t: usize },
    IdempotentsNotOrthogonal { s: usize, t: usize },
    IdempotentSumNotUnit,
    /// The supplied radical basis differs from the trace-form radical.
    RadicalMismatch,
    RadicalNotIdeal,
    RadicalNotNilpotent,
    /// dim(A/rad) ≠ number of idempotents, so the algebra is not split basic.
    NotSplitBasic { quotient_dim: usize, idempotents: usize },
}

impl std::fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraViolation::FieldTooSmall { p, dim } => {
                write!(f, "field too small: p = {p} must exceed dim = {dim}")
            }
            AlgebraViolation::Associativity { i, j, l } => {
                write!(f, "associativity fails at triple ({i}, {j}, {l})")
            }
            AlgebraViolation::UnitLaw { index } => write!(f, "unit law fails at basis index {index}"),
            AlgebraViolation::IdempotentNotIdempotent { t } => {
                write!(f, "idempotent {t} is not idempotent")
            }
            AlgebraViolation::IdempotentsNotOrthogonal { s, t } => {
                write!(f, "idempotents {s} and {t} are not orthogonal")
            }
            AlgebraViolation::IdempotentSumNotUnit => write!(f, "idempotents do not sum to the unit"),
            AlgebraViolation::RadicalMismatch => {
                write!(f, "supplied radical basis differs from the trace-form radical")
            }
            AlgebraViolation::RadicalNotIdeal => write!(f, "radical basis does not span a two-sided ideal"),
            AlgebraViolation::RadicalNotNilpotent => write!(f, "radical is not nilpotent"),
            AlgebraViolation::NotSplitBasic { quotient_dim, idempotents } => write!(
                f,
                "not split basic: dim(A/rad) = {quotient_dim} but {idempotents} idempotents were supplied"
            ),
        }
    }
}

/// Raw, unvalidated table data for an algebra. `radical` may be omitted, in
/// which case it is computed from the trace form.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub field: Fp,
    pub basis_names: Vec<String>,
    pub structure: Vec<u64>,
    pub unit: Vec<u64>,
    pub idempotents: Vec<Vec<u64>>,
    pub radical: Option<Vec<Vec<u64>>>,
}

impl Algebra {
    /// Validate `data` and build the algebra. The returned algebra always has
    /// an empty [`Algebra::validate`] report.
    pub fn new(data: AlgebraData) -> Result<Algebra> {
        let dim = data.basis_names.len();
        if data.structure.len() != dim * dim * dim {
            return Err(Error::InputError(format!(
                "structure table has {} entries, expected dim³ = {}",
                data.structure.len(),
                dim * dim * dim
            )));
        }
        if data.unit.len() != dim || data.idempotents.iter().any(|e| e.len() != dim) {
            return Err(Error::InputError("unit or idempotent vector has wrong length".into()));
        }
        let supplied_radical = match &data.radical {
            Some(rows) => {
                if rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::InputError("radical basis vector has wrong length".into()));
                }
                Some(Subspace::from_vectors(data.field, dim, rows))
            }
            None => None,
        };
        let candidate = Algebra {
            field: data.field,
            dim,
            basis_names: data.basis_names,
            structure: data.structure.iter().map(|&x| data.field.reduce(x)).collect(),
            unit: data.unit.iter().map(|&x| data.field.reduce(x)).collect(),
            idempotents: data
                .idempotents
                .iter()
                .map(|e| e.iter().map(|&x| data.field.reduce(x)).collect())
                .collect(),
            // Temporary; replaced below once the table is known to be sane.
            radical: Subspace::zero(data.field, dim),
        };
        let table_violations = candidate.validate_table();
        if !table_violations.is_empty() {
            let listing = table_violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
            return Err(Error::InvalidAlgebra(listing));
        }
        let trace_radical = candidate.trace_form_radical();
        let algebra = Algebra { radical: trace_radical, ..candidate };
        let radical_violations = algebra.validate_radical(supplied_radical.as_ref());
        if !radical_violations.is_empty() {
            let listing = radical_violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
            return Err(Error::InvalidAlgebra(listing));
        }
        Ok(algebra)
    }

    /// Full validation report on raw data: every violated invariant is
    /// listed; an empty list means the data defines a valid split basic
    /// algebra. Never errors on well-shaped input.
    pub fn validate(data: &AlgebraData) -> Result<Vec<AlgebraViolation>> {
        let dim = data.basis_names.len();
        if data.structure.len() != dim * dim * dim
            || data.unit.len() != dim
            || data.idempotents.iter().any(|e| e.len() != dim)
            || data.radical.iter().flatten().any(|r| r.len() != dim)
        {
            return Err(Error::InputError("malformed dimensions in algebra data".into()));
        }
        let candidate = Algebra {
            field: data.field,
            dim,
            basis_names: data.basis_names.clone(),
            structure: data.structure.iter().map(|&x| data.field.reduce(x)).collect(),
            unit: data.unit.iter().map(|&x| data.field.reduce(x)).collect(),
            idempotents: data
                .idempotents
                .iter()
                .map(|e| e.iter().map(|&x| data.field.reduce(x)).collect())
                .collect(),
            radical: Subspace::zero(data.field, dim),
        };
        let mut violations = candidate.validate_table();
        // Radical checks only make sense over a sane table: the trace form of
        // a non-associative table certifies nothing.
        if violations.is_empty() {
            let supplied = data
                .radical
                .as_ref()
                .map(|rows| Subspace::from_vectors(data.field, dim, rows));
            let with_radical = Algebra { radical: candidate.trace_form_radical(), ..candidate };
            violations.extend(with_radical.validate_radical(supplied.as_ref()));
        }
        Ok(violations)
    }

    /// Table-level invariants: field size, associativity, unit law,
    /// idempotent laws.
    fn validate_table(&self) -> Vec<AlgebraViolation> {
        let mut out = Vec::new();
        let d = self.dim;
        let f = self.field;
        if f.p() <= d as u64 {
            out.push(AlgebraViolation::FieldTooSmall { p: f.p(), dim: d });
        }
        // Associativity on structure constants:
        // Σ_m c(i,j,m)·c(m,l,k) = Σ_m c(j,l,m)·c(i,m,k) for all i,j,l,k.
        'assoc: for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    for k in 0..d {
                        let mut lhs = 0;
                        let mut rhs = 0;
                        for m in 0..d {
                            lhs = f.add(lhs, f.mul(self.c(i, j, m), self.c(m, l, k)));
                            rhs = f.add(rhs, f.mul(self.c(j, l, m), self.c(i, m, k)));
                        }
                        if lhs != rhs {
                            out.push(AlgebraViolation::Associativity { i, j, l });
                            continue 'assoc;
                        }
                    }
                }
            }
        }
        for i in 0..d {
            let e_i: Vec<u64> = (0..d).map(|k| u64::from(k == i)).collect();
            if self.mul_vec(&self.unit, &e_i) != e_i || self.mul_vec(&e_i, &self.unit) != e_i {
                out.push(AlgebraViolation::UnitLaw { index: i });
            }
        }
        for (t, e) in self.idempotents.iter().enumerate() {
            if &self.mul_vec(e, e) != e {
                out.push(AlgebraViolation::IdempotentNotIdempotent { t });
            }
        }
        for s in 0..self.idempotents.len() {
            for t in 0..self.idempotents.len() {
                if s != t && self.mul_vec(&self.idempotents[s], &self.idempotents[t]).iter().any(|&x| x != 0) {
                    out.push(AlgebraViolation::IdempotentsNotOrthogonal { s, t });
                }
            }
        }
        let mut sum = vec![0u64; d];
        for e in &self.idempotents {
            for k in 0..d {
                sum[k] = f.add(sum[k], e[k]);
            }
        }
        if sum != self.unit {
            out.push(AlgebraViolation::IdempotentSumNotUnit);
        }
        out
    }

    /// Radical-level invariants, given an optional user-supplied basis to
    /// cross-validate against the trace-form radical stored in `self`.
    fn validate_radical(&self, supplied: Option<&Subspace>) -> Vec<AlgebraViolation> {
        let mut out = Vec::new();
        if let Some(s) = supplied {
            if *s != self.radical {
                out.push(AlgebraViolation::RadicalMismatch);
            }
        }
        if !self.is_ideal(&self.radical) {
            out.push(AlgebraViolation::RadicalNotIdeal);
        }
        if !self.ideal_is_nilpotent(&self.radical) {
            out.push(AlgebraViolation::RadicalNotNilpotent);
        }
        let quotient_dim = self.dim - self.radical.dim();
        if quotient_dim != self.idempotents.len() {
            out.push(AlgebraViolation::NotSplitBasic {
                quotient_dim,
                idempotents: self.idempotents.len(),
            });
        } else {
            // The idempotent classes must be independent modulo the radical,
            // i.e. rad + span(e_t) must be the whole algebra.
            let span = Subspace::from_vectors(self.field, self.dim, &self.idempotents);
            if self.radical.sum(&span).dim() != self.dim {
                out.push(AlgebraViolation::NotSplitBasic {
                    quotient_dim,
                    idempotents: self.idempotents.len(),
                });
            }
        }
        out
    }

    /// Radical of the trace bilinear form T(x, y) = Tr(L_x·L_y); equals the
    /// Jacobson radical because p > dim is enforced.
    pub fn trace_form_radical(&self) -> Subspace {
        let d = self.dim;
        let lefts: Vec<Matrix> = (0..d).map(|i| self.left_mult_basis(i)).collect();
        let gram = Matrix::from_fn(self.field, d, d, |i, j| {
            let prod = lefts[i].mul(&lefts[j]);
            let mut tr = 0;
            for k in 0..d {
                tr = self.field.add(tr, prod.get(k, k));
            }
            tr
        });
        gram.kernel_basis()
    }

    fn is_ideal(&self, s: &Subspace) -> bool {
        (0..s.dim()).all(|v| {
            let vec = s.basis().row(v);
            (0..self.dim).all(|i| {
                let e_i: Vec<u64> = (0..self.dim).map(|k| u64::from(k == i)).collect();
                s.contains_vector(&self.mul_vec(&e_i, vec)) && s.contains_vector(&self.mul_vec(vec, &e_i))
            })
        })
    }

    /// Whether the ideal spanned by `s` is nilpotent (power reaches zero
    /// within `dim` steps). Powers are computed as subspaces.
    pub fn ideal_is_nilpotent(&self, s: &Subspace) -> bool {
        self.ideal_nilpotency_index(s).is_some()
    }

    /// Smallest m with S^m = 0, if one exists within `dim + 1` steps.
    pub fn ideal_nilpotency_index(&self, s: &Subspace) -> Option<usize> {
        let mut power = s.clone();
        for m in 1..=self.dim + 1 {
            if power.dim() == 0 {
                return Some(m);
            }
            let mut products = Vec::new();
            for i in 0..power.dim() {
                for j in 0..s.dim() {
                    products.push(self.mul_vec(power.basis().row(i), s.basis().row(j)));
                }
            }
            let next = Subspace::from_vectors(self.field, self.dim, &products);
            if next.dim() == power.dim() && next == power {
                // Stable nonzero power: not nilpotent.
                return None;
            }
            power = next;
        }
        (power.dim() == 0).then_some(self.dim + 2)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Structure constant c_{ij}^k with b_i·b_j = Σ_k c_{ij}^k·b_k.
    pub fn c(&self, i: usize, j: usize, k: usize) -> u64 {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure(&self) -> &[u64] {
        &self.structure
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<u64>] {
        &self.idempotents
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    /// Product of two elements given as coefficient vectors.
    pub fn mul_vec(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let d = self.dim;
        let f = self.field;
        let mut z = vec![0u64; d];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0 {
                    continue;
                }
                let xy = f.mul(x[i], y[j]);
                for k in 0..d {
                    let c = self.c(i, j, k);
                    if c != 0 {
                        z[k] = f.add(z[k], f.mul(xy, c));
                    }
                }
            }
        }
        z
    }

    /// Matrix of left multiplication by basis element b_i.
    pub fn left_mult_basis(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim, |k, j| self.c(i, j, k))
    }

    /// Matrix of right multiplication by basis element b_j.
    pub fn right_mult_basis(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim, |k, i| self.c(i, j, k))
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_mult(&self, x: &[u64]) -> Matrix {
        let f = self.field;
        let mut m = Matrix::zero(f, self.dim, self.dim);
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            m = m.add(&self.left_mult_basis(i).scale(x[i]));
        }
        m
    }

    /// Matrix of right multiplication by an arbitrary element.
    pub fn right_mult(&self, x: &[u64]) -> Matrix {
        let f = self.field;
        let mut m = Matrix::zero(f, self.dim, self.dim);
        for j in 0..self.dim {
            if x[j] == 0 {
                continue;
            }
            m = m.add(&self.right_mult_basis(j).scale(x[j]));
        }
        m
    }

    /// The opposite algebra: c^op_{ij}{}^k = c_{ji}{}^k; unit, idempotents and
    /// radical carry over unchanged.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let mut structure = vec![0u64; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    structure[(i * d + j) * d + k] = self.c(j, i, k);
                }
            }
        }
        Algebra { structure, ..self.clone() }
    }

    /// Direct product A × B with block-diagonal structure constants. The
    /// basis is A's basis followed by B's; idempotents are the embedded
    /// idempotents of both factors and the radical is rad A ⊕ rad B.
    pub fn product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
        if a.field != b.field {
            return Err(Error::InputError("product factors over different fields".into()));
        }
        let f = a.field;
        let d = a.dim + b.dim;
        if f.p() <= d as u64 {
            return Err(Error::FieldTooSmall { p: f.p(), bound: d as u64 });
        }
        let mut structure = vec![0u64; d * d * d];
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    structure[(i * d + j) * d + k] = a.c(i, j, k);
                }
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                for k in 0..b.dim {
                    structure[((a.dim + i) * d + a.dim + j) * d + a.dim + k] = b.c(i, j, k);
                }
            }
        }
        let embed_a = |v: &[u64]| {
            let mut w = vec![0u64; d];
            w[..a.dim].copy_from_slice(v);
            w
        };
        let embed_b = |v: &[u64]| {
            let mut w = vec![0u64; d];
            w[a.dim..].copy_from_slice(v);
            w
        };
        let mut unit = embed_a(&a.unit);
        unit[a.dim..].copy_from_slice(&b.unit);
        let mut idempotents: Vec<Vec<u64>> = a.idempotents.iter().map(|e| embed_a(e)).collect();
        idempotents.extend(b.idempotents.iter().map(|e| embed_b(e)));
        let mut radical_rows: Vec<Vec<u64>> =
            (0..a.radical.dim()).map(|i| embed_a(a.radical.basis().row(i))).collect();
        radical_rows.extend((0..b.radical.dim()).map(|i| embed_b(b.radical.basis().row(i))));
        let mut basis_names: Vec<String> = a.basis_names.iter().map(|n| format!("A.{n}")).collect();
        basis_names.extend(b.basis_names.iter().map(|n| format!("B.{n}")));
        Algebra::new(AlgebraData {
            field: f,
            basis_names,
            structure,
            unit,
            idempotents,
            radical: Some(radical_rows),
        })
    }

    /// The enveloping algebra A ⊗ A^op, with basis pairs (i, j) ↦ i·dim + j.
    /// Requires p > dim², since the result has dimension dim².
    pub fn enveloping(&self) -> Result<Algebra> {
        let d = self.dim;
        let f = self.field;
        let dd = d * d;
        if f.p() <= dd as u64 {
            return Err(Error::FieldTooSmall { p: f.p(), bound: dd as u64 });
        }
        // (x⊗y°)·(x′⊗y′°) = (x·x′) ⊗ (y′·y)°.
        let mut structure = vec![0u64; dd * dd * dd];
        for i in 0..d {
            for j in 0..d {
                for ip in 0..d {
                    for jp in 0..d {
                        for k in 0..d {
                            let left = self.c(i, ip, k);
                            if left == 0 {
                                continue;
                            }
                            for l in 0..d {
                                let right = self.c(jp, j, l);
                                if right == 0 {
                                    continue;
                                }
                                let row = i * d + j;
                                let col = ip * d + jp;
                                let out = k * d + l;
                                let idx = (row * dd + col) * dd + out;
                                structure[idx] = f.add(structure[idx], f.mul(left, right));
                            }
                        }
                    }
                }
            }
        }
        let kron_vec = |x: &[u64], y: &[u64]| {
            let mut v = vec![0u64; dd];
            for i in 0..d {
                for j in 0..d {
                    v[i * d + j] = f.mul(x[i], y[j]);
                }
            }
            v
        };
        let unit = kron_vec(&self.unit, &self.unit);
        let mut idempotents = Vec::new();
        for e in &self.idempotents {
            for ep in &self.idempotents {
                idempotents.push(kron_vec(e, ep));
            }
        }
        // rad(A^e) = rad ⊗ A + A ⊗ rad for split basic A.
        let mut radical_rows = Vec::new();
        let basis_vec = |i: usize| -> Vec<u64> { (0..d).map(|k| u64::from(k == i)).collect() };
        for r in 0..self.radical.dim() {
            for j in 0..d {
                radical_rows.push(kron_vec(self.radical.basis().row(r), &basis_vec(j)));
            }
        }
        for i in 0..d {
            for r in 0..self.radical.dim() {
                radical_rows.push(kron_vec(&basis_vec(i), self.radical.basis().row(r)));
            }
        }
        let mut basis_names = Vec::with_capacity(dd);
        for i in 0..d {
            for j in 0..d {
                basis_names.push(format!("{}⊗{}°", self.basis_names[i], self.basis_names[j]));
            }
        }
        Algebra::new(AlgebraData {
            field: f,
            basis_names,
            structure,
            unit,
            idempotents,
            radical: Some(radical_rows),
        })
    }

    /// Whether two algebra handles refer to the same mathematical algebra,
    /// cheaply: pointer equality first, then table comparison (basis names
    /// excluded — relabelings are compatible for module arithmetic).
    pub fn compatible(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(a, b)
            || (a.field == b.field && a.dim == b.dim && a.structure == b.structure && a.unit == b.unit)
    }
}

/// A unital algebra homomorphism, stored as a matrix acting on coefficient
/// column vectors (dim target × dim source).
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: Matrix,
}

impl AlgebraHom {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<AlgebraHom> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InputError("algebra hom matrix has wrong shape".into()));
        }
        let hom = AlgebraHom { source, target, matrix };
        hom.check()?;
        Ok(hom)
    }

    /// Multiplicativity on all basis pairs and unitality.
    fn check(&self) -> Result<()> {
        let s = &self.source;
        let t = &self.target;
        let d = s.dim();
        for i in 0..d {
            for j in 0..d {
                let e_i: Vec<u64> = (0..d).map(|k| u64::from(k == i)).collect();
                let e_j: Vec<u64> = (0..d).map(|k| u64::from(k == j)).collect();
                let lhs = self.apply(&s.mul_vec(&e_i, &e_j));
                let rhs = t.mul_vec(&self.apply(&e_i), &self.apply(&e_j));
                if lhs != rhs {
                    return Err(Error::InputError(format!(
                        "algebra hom is not multiplicative at basis pair ({i}, {j})"
                    )));
                }
            }
        }
        if self.apply(s.unit()) != t.unit() {
            return Err(Error::InputError("algebra hom does not preserve the unit".into()));
        }
        Ok(())
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.matrix.apply(v)
    }

    /// f ∘ g (apply `g` first).
    pub fn compose(&self, g: &AlgebraHom) -> Result<AlgebraHom> {
        if !Algebra::compatible(&self.source, &g.target) {
            return Err(Error::InputError("algebra hom composition mismatch".into()));
        }
        AlgebraHom::new(g.source.clone(), self.target.clone(), self.matrix.mul(&g.matrix))
    }
}

/// A finite quiver: `vertices` counts vertices 0..n, arrows go source→target.
#[derive(Clone, Debug)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

#[derive(Clone, Debug)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub name: String,
}

/// A relation: a linear combination of parallel paths of length ≥ 2, each
/// path given as a composable list of arrow indices read left to right.
#[derive(Clone, Debug)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

/// A path in the quiver, read left to right: `e_u` for `arrows` empty, else
/// the composition of the listed arrows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Path {
    start: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].target)
    }

    fn len(&self) -> usize {
        self.arrows.len()
    }
}

/// The path algebra kQ modulo the ideal generated by `relations`, truncated
/// at `length_cap`. Paths are composed left to right, so for an arrow
/// α: u→v the products satisfy e_u·α = α = α·e_v.
///
/// Fails with `NotFiniteDimensional` if some path of length = `length_cap`
/// does not lie in the (truncated) relation ideal: the quotient is then not
/// certified finite-dimensional within the cap.
pub fn path_algebra(field: Fp, quiver: &Quiver, relations: &[Relation], length_cap: usize) -> Result<Algebra> {
    if length_cap < 1 {
        return Err(Error::InputError("length_cap must be ≥ 1".into()));
    }
    for arrow in &quiver.arrows {
        if arrow.source >= quiver.vertices || arrow.target >= quiver.vertices {
            return Err(Error::InputError(format!("arrow {} has an out-of-range vertex", arrow.name)));
        }
    }
    // Enumerate all paths of length ≤ cap in deterministic order
    // (by length, then by extension order).
    let mut paths: Vec<Path> = (0..quiver.vertices).map(|v| Path { start: v, arrows: vec![] }).collect();
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    for _ in 1..=length_cap {
        let mut next = Vec::new();
        for &pi in &frontier {
            for (ai, arrow) in quiver.arrows.iter().enumerate() {
                if arrow.source == paths[pi].end(quiver) {
                    let mut arrows = paths[pi].arrows.clone();
                    arrows.push(ai);
                    next.push(Path { start: paths[pi].start, arrows });
                }
            }
        }
        frontier = (paths.len()..paths.len() + next.len()).collect();
        paths.extend(next);
    }
    let index: std::collections::HashMap<Path, usize> =
        paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = paths.len();

    // Validate relations: composable paths of length ≥ 2, all terms parallel.
    let mut checked_relations = Vec::new();
    for (ri, rel) in relations.iter().enumerate() {
        let mut endpoints = None;
        let mut terms = Vec::new();
        for (coeff, arrows) in &rel.terms {
            if arrows.len() < 2 {
                return Err(Error::InputError(format!("relation {ri} contains a path of length < 2")));
            }
            for w in arrows.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(Error::InputError(format!("relation {ri} contains a non-composable path")));
                }
            }
            let p = Path { start: quiver.arrows[arrows[0]].source, arrows: arrows.clone() };
            let ends = (p.start, p.end(quiver));
            if *endpoints.get_or_insert(ends) != ends {
                return Err(Error::InputError(format!("relation {ri} mixes non-parallel paths")));
            }
            terms.push((field.reduce_i64(*coeff), p));
        }
        checked_relations.push(terms);
    }

    // Span of the relation ideal inside the truncated path space: all
    // products u·r·v with u, v paths; terms whose total length exceeds the
    // cap vanish in the truncation.
    let mut ideal_rows = Vec::new();
    for rel in &checked_relations {
        let (r_start, r_end) = {
            let p = &rel[0].1;
            (p.start, p.end(quiver))
        };
        for u in paths.iter().filter(|u| u.end(quiver) == r_start) {
            for v in paths.iter().filter(|v| v.start == r_end) {
                let mut row = vec![0u64; n];
                let mut nonzero = false;
                for (coeff, p) in rel {
                    let total = u.len() + p.len() + v.len();
                    if total > length_cap || *coeff == 0 {
                        continue;
                    }
                    let mut arrows = u.arrows.clone();
                    arrows.extend_from_slice(&p.arrows);
                    arrows.extend_from_slice(&v.arrows);
                    let w = Path { start: u.start, arrows };
                    let wi = index[&w];
                    row[wi] = field.add(row[wi], *coeff);
                    nonzero = true;
                }
                if nonzero {
                    ideal_rows.push(row);
                }
            }
        }
    }
    let ideal = Subspace::from_vectors(field, n, &ideal_rows);

    // Certification: every path of length = cap must lie in the ideal span,
    // otherwise the quotient may be infinite-dimensional past the cap.
    for (pi, p) in paths.iter().enumerate() {
        if p.len() == length_cap {
            let mut v = vec![0u64; n];
            v[pi] = 1;
            if !ideal.contains_vector(&v) {
                return Err(Error::NotFiniteDimensional(format!(
                    "path of length {length_cap} survives the relations (path index {pi})"
                )));
            }
        }
    }

    // Quotient basis: non-pivot paths (all of length < cap after the check).
    let pivots: Vec<usize> = ideal.pivots().to_vec();
    let basis_paths: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let quotient_index: std::collections::HashMap<usize, usize> =
        basis_paths.iter().enumerate().map(|(qi, &pi)| (pi, qi)).collect();
    let d = basis_paths.len();
    if field.p() <= d as u64 {
        return Err(Error::FieldTooSmall { p: field.p(), bound: d as u64 });
    }

    // Reduce a truncated-path-space vector to quotient coordinates.
    let to_quotient = |v: &[u64]| -> Vec<u64> {
        let reduced = ideal.reduce_vector(v);
        basis_paths.iter().map(|&pi| reduced[pi]).collect()
    };

    let mut structure = vec![0u64; d * d * d];
    for (qi, &pi) in basis_paths.iter().enumerate() {
        for (qj, &pj) in basis_paths.iter().enumerate() {
            let (pu, pv) = (&paths[pi], &paths[pj]);
            if pu.end(quiver) != pv.start {
                continue; // non-composable: product is zero
            }
            let total = pu.len() + pv.len();
            if total > length_cap {
                continue; // vanishes in the truncation
            }
            let mut arrows = pu.arrows.clone();
            arrows.extend_from_slice(&pv.arrows);
            let w = Path { start: pu.start, arrows };
            let mut v = vec![0u64; n];
            v[index[&w]] = 1;
            for (k, c) in to_quotient(&v).into_iter().enumerate() {
                structure[(qi * d + qj) * d + k] = c;
            }
        }
    }

    let basis_names: Vec<String> = basis_paths
        .iter()
        .map(|&pi| {
            let p = &paths[pi];
            if p.arrows.is_empty() {
                format!("e{}", p.start + 1)
            } else {
                p.arrows.iter().map(|&a| quiver.arrows[a].name.clone()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();

    let mut unit = vec![0u64; d];
    let mut idempotents = Vec::new();
    for v in 0..quiver.vertices {
        let pi = index[&Path { start: v, arrows: vec![] }];
        let qi = quotient_index[&pi];
        unit[qi] = 1;
        let mut e = vec![0u64; d];
        e[qi] = 1;
        idempotents.push(e);
    }
    // The arrow ideal image: classes of paths of length ≥ 1 span the radical
    // (nilpotent by the cap, with semisimple quotient k^vertices).
    let radical_rows: Vec<Vec<u64>> = basis_paths
        .iter()
        .enumerate()
        .filter(|(_, &pi)| paths[pi].len() >= 1)
        .map(|(qi, _)| {
            let mut v = vec![0u64; d];
            v[qi] = 1;
            v
        })
        .collect();

    Algebra::new(AlgebraData {
        field,
        basis_names,
        structure,
        unit,
        idempotents,
        radical: Some(radical_rows),
    })
}
