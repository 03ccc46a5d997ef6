//! Dense complex linear algebra for few-qubit systems: state vectors,
//! operators, density matrices, partial trace/transpose and a Hermitian
//! eigensolver. Everything is sized for desk-scale work (at most 10 qubits).

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// Hard cap on system size; tensor products beyond this are rejected.
pub const MAX_QUBITS: usize = 10;

/// Accepted deviation from unit norm before a constructor refuses to
/// renormalize silently.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Hermiticity tolerance for eigensolver input.
pub const HERMITICITY_TOLERANCE: f64 = 1e-10;

/// Eigenvalues of a density matrix above this negative floor are treated as
/// rounding noise and clamped to zero.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check_qubit_budget(qubits: usize) -> Result<()> {
    if qubits > MAX_QUBITS {
        return Err(Error::DimensionLimit { qubits });
    }
    Ok(())
}

/// Norm squared of a raw amplitude vector.
pub fn vec_norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

/// Inner product `<a|b>` of two raw amplitude vectors (conjugate-linear in `a`).
pub fn vec_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// A normalized pure state on `num_qubits` qubits.
///
/// Amplitudes are stored big-endian: the leftmost ket label is the most
/// significant bit of the index, so for two qubits `|10>` sits at index 2.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state from raw amplitudes, renormalizing when the norm is off
    /// by at most [`NORM_TOLERANCE`] and refusing anything further out.
    pub fn new(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_budget(num_qubits)?;
        if amps.len() != 1 << num_qubits {
            return Err(Error::AmplitudeCount { len: amps.len(), qubits: num_qubits });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr = vec_norm_sqr(&amps);
        if norm_sqr == 0.0 {
            return Err(Error::ZeroVector);
        }
        let deviation = (norm_sqr.sqrt() - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::Normalization { deviation });
        }
        let mut amps = amps;
        let norm = norm_sqr.sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        Ok(Self { num_qubits, amps })
    }

    /// Builds a state from any nonzero amplitude vector by rescaling it.
    pub fn normalized(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_budget(num_qubits)?;
        if amps.len() != 1 << num_qubits {
            return Err(Error::AmplitudeCount { len: amps.len(), qubits: num_qubits });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = vec_norm_sqr(&amps).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(Self { num_qubits, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        assert!(num_qubits <= MAX_QUBITS && index < (1 << num_qubits));
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { num_qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.num_qubits, other.num_qubits);
        vec_inner(&self.amps, &other.amps)
    }

    /// `|<self|other>|^2`; 1 exactly when the states agree up to a global phase.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Global-phase-insensitive comparison at tolerance `tol` on the fidelity.
    pub fn eq_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        self.num_qubits == other.num_qubits && self.fidelity(other) >= 1.0 - tol
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let qubits = self.num_qubits + other.num_qubits;
        check_qubit_budget(qubits)?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self { num_qubits: qubits, amps })
    }

    pub fn density(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = self.amps[i] * self.amps[j].conj();
            }
        }
        DensityMatrix { num_qubits: self.num_qubits, entries }
    }

    /// Amplitudes as `[re, im]` pairs, the wire format used in reports.
    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.amps.iter().map(|a| [a.re, a.im]).collect()
    }
}

impl Serialize for PureState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.amps.len()))?;
        for a in &self.amps {
            seq.serialize_element(&[a.re, a.im])?;
        }
        seq.end()
    }
}

/// A dense square matrix acting on a qubit register, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Serialize for Operator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim))?;
        for row in self.entries.chunks(self.dim) {
            let pairs: Vec<[f64; 2]> = row.iter().map(|e| [e.re, e.im]).collect();
            seq.serialize_element(&pairs)?;
        }
        seq.end()
    }
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            op.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        op
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "operator rows must be square");
            entries.extend_from_slice(row);
        }
        Self { dim, entries }
    }

    pub fn pauli_x() -> Self {
        Self::from_rows(&[vec![cr(0.0), cr(1.0)], vec![cr(1.0), cr(0.0)]])
    }

    pub fn pauli_y() -> Self {
        Self::from_rows(&[vec![cr(0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), cr(0.0)]])
    }

    pub fn pauli_z() -> Self {
        Self::from_rows(&[vec![cr(1.0), cr(0.0)], vec![cr(0.0), cr(-1.0)]])
    }

    /// Rank-one projector `|state><state|`.
    pub fn projector(state: &PureState) -> Self {
        let d = state.density();
        Self { dim: d.dim(), entries: d.entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let dim = self.dim * other.dim;
        if dim > (1 << MAX_QUBITS) {
            return Err(Error::DimensionLimit { qubits: dim.ilog2() as usize });
        }
        let mut out = Self::zeros(dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        out.set(i * other.dim + k, j * other.dim + l, a * other.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            for k in 0..dim {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..dim {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Self { dim: self.dim, entries }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let entries = self.entries.iter().map(|a| a * factor).collect();
        Self { dim: self.dim, entries }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        let entries = self.entries.iter().map(|a| a.conj()).collect();
        Self { dim: self.dim, entries }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, value) in v.iter().enumerate() {
                acc += self.get(i, j) * value;
            }
            *slot = acc;
        }
        out
    }

    /// `<state| self |state>`.
    pub fn expectation(&self, state: &PureState) -> Complex64 {
        let applied = self.apply_vec(state.amplitudes());
        vec_inner(state.amplitudes(), &applied)
    }

    /// Largest `|a_ij - conj(a_ji)|` over the matrix.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Eigenvalues of a Hermitian matrix, descending. Rejects inputs whose
    /// hermiticity deviation exceeds [`HERMITICITY_TOLERANCE`].
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.hermitian_eigen()?.0)
    }

    /// Full Hermitian eigendecomposition: descending eigenvalues plus the
    /// matching orthonormal eigenvectors as columns of the returned operator.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, Operator)> {
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITICITY_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        jacobi_hermitian(self)
    }
}

/// Cyclic Jacobi for complex Hermitian matrices. Each rotation annihilates one
/// off-diagonal element; sweeps repeat until the off-diagonal mass is at
/// rounding level, which for the sizes used here (at most 16 x 16) leaves the
/// eigenvalues accurate to machine precision.
fn jacobi_hermitian(matrix: &Operator) -> Result<(Vec<f64>, Operator)> {
    let dim = matrix.dim();
    let mut a = matrix.clone();
    let mut v = Operator::identity(dim);
    // Force exact Hermitian symmetry so rotations preserve it to the last bit.
    for i in 0..dim {
        for j in 0..i {
            let m = (a.get(j, i) + a.get(i, j).conj()) * cr(0.5);
            a.set(j, i, m);
            a.set(i, j, m.conj());
        }
        let d = a.get(i, i);
        a.set(i, i, cr(d.re));
    }
    let scale = a.frobenius_norm().max(1.0);
    let stop = scale * 1e-15;
    let mut converged = false;
    for _ in 0..100 {
        let mut off_sqr = 0.0;
        for i in 0..dim {
            for j in (i + 1)..dim {
                off_sqr += a.get(i, j).norm_sqr();
            }
        }
        if off_sqr.sqrt() <= stop {
            converged = true;
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r <= stop / (dim as f64 * dim as f64) {
                    continue;
                }
                let phase = apq / r;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (app - aqq) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = t * cth;
                // Unitary G: G[p][p]=c, G[p][q]=-s*phase, G[q][p]=s*conj(phase), G[q][q]=c.
                let gp = -sth * phase;
                let gq = sth * phase.conj();
                // Column update A <- A G, same for the eigenvector accumulator.
                for i in 0..dim {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * cth + aiq * gq);
                    a.set(i, q, aip * gp + aiq * cth);
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * cth + viq * gq);
                    v.set(i, q, vip * gp + viq * cth);
                }
                // Row update A <- G^\dagger A.
                for j in 0..dim {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * cth + aqj * gq.conj());
                    a.set(q, j, apj * gp.conj() + aqj * cth);
                }
                a.set(p, q, cr(0.0));
                a.set(q, p, cr(0.0));
                a.set(p, p, cr(a.get(p, p).re));
                a.set(q, q, cr(a.get(q, q).re));
            }
        }
    }
    if !converged {
        return Err(Error::EigenConvergence);
    }
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| a.get(j, j).re.partial_cmp(&a.get(i, i).re).unwrap());
    let values = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = Operator::zeros(dim);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..dim {
            vectors.set(row, col, v.get(row, src));
        }
    }
    Ok((values, vectors))
}

/// A validated density matrix on a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Wraps a matrix after checking hermiticity and unit trace. Positivity is
    /// enforced separately by [`DensityMatrix::eigenvalues`], which clamps
    /// rounding-level negatives and rejects anything below the floor.
    pub fn new(num_qubits: usize, op: Operator) -> Result<Self> {
        check_qubit_budget(num_qubits)?;
        if op.dim() != 1 << num_qubits {
            return Err(Error::AmplitudeCount { len: op.dim(), qubits: num_qubits });
        }
        let deviation = op.hermiticity_deviation();
        if deviation > 1e-12 {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = op.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::NotDensityMatrix(format!("trace {} is not 1", trace.re)));
        }
        Ok(Self { num_qubits, entries: op.entries })
    }

    pub fn from_pure(state: &PureState) -> Self {
        state.density()
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim() + j]
    }

    pub fn as_operator(&self) -> Operator {
        Operator { dim: self.dim(), entries: self.entries.clone() }
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        let dim = self.dim();
        let mut acc = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                acc += (self.get(i, j) * self.get(j, i)).re;
            }
        }
        acc
    }

    /// Eigenvalues, descending, with values in `[EIGENVALUE_FLOOR, 0)` clamped
    /// to zero. Anything below the floor makes this not a density matrix.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let raw = self.as_operator().hermitian_eigen()?.0;
        let mut clamped = Vec::with_capacity(raw.len());
        for e in raw {
            if e < EIGENVALUE_FLOOR {
                return Err(Error::NotDensityMatrix(format!("eigenvalue {e:.3e} below floor")));
            }
            clamped.push(if e < 0.0 { 0.0 } else { e });
        }
        Ok(clamped)
    }

    /// Positive square root via the eigendecomposition.
    pub fn sqrt(&self) -> Result<Operator> {
        let (values, vectors) = self.as_operator().hermitian_eigen()?;
        let dim = self.dim();
        let mut out = Operator::zeros(dim);
        for (k, &e) in values.iter().enumerate() {
            if e < EIGENVALUE_FLOOR {
                return Err(Error::NotDensityMatrix(format!("eigenvalue {e:.3e} below floor")));
            }
            let root = e.max(0.0).sqrt();
            if root == 0.0 {
                continue;
            }
            for i in 0..dim {
                for j in 0..dim {
                    let v = out.get(i, j) + cr(root) * vectors.get(i, k) * vectors.get(j, k).conj();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Traces out every qubit not listed in `keep` (indices sorted, unique,
    /// big-endian positions). The kept qubits preserve their relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.num_qubits;
        if keep.is_empty() || keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset);
        }
        if let Some(&max) = keep.last() {
            if max >= n {
                return Err(Error::QubitIndex { index: max, num_qubits: n });
            }
        }
        let traced: Vec<usize> = (0..n).filter(|p| !keep.contains(p)).collect();
        let k = keep.len();
        let kd = 1 << k;
        let td = 1 << traced.len();
        let compose = |kept_bits: usize, traced_bits: usize| -> usize {
            let mut idx = 0usize;
            for (ord, &pos) in keep.iter().enumerate() {
                if (kept_bits >> (k - 1 - ord)) & 1 == 1 {
                    idx |= 1 << (n - 1 - pos);
                }
            }
            for (ord, &pos) in traced.iter().enumerate() {
                if (traced_bits >> (traced.len() - 1 - ord)) & 1 == 1 {
                    idx |= 1 << (n - 1 - pos);
                }
            }
            idx
        };
        let dim = self.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); kd * kd];
        for i in 0..kd {
            for j in 0..kd {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..td {
                    acc += self.entries[compose(i, t) * dim + compose(j, t)];
                }
                entries[i * kd + j] = acc;
            }
        }
        Ok(DensityMatrix { num_qubits: k, entries })
    }

    /// Partial transpose of a two-qubit state over the given qubit. The result
    /// is Hermitian with unit trace but may fail positivity, so it is returned
    /// as a plain operator.
    pub fn partial_transpose(&self, subsystem: usize) -> Result<Operator> {
        if self.num_qubits != 2 {
            return Err(Error::QubitCount { expected: 2, actual: self.num_qubits });
        }
        if subsystem > 1 {
            return Err(Error::QubitIndex { index: subsystem, num_qubits: 2 });
        }
        let mut out = Operator::zeros(4);
        for a in 0..2 {
            for b in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        let (row, col) = if subsystem == 0 {
                            (p * 2 + b, a * 2 + q)
                        } else {
                            (a * 2 + q, p * 2 + b)
                        };
                        out.set(a * 2 + b, p * 2 + q, self.get(row, col));
                    }
                }
            }
        }
        Ok(out)
    }
}
