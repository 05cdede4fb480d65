use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::EpError;
use crate::clifford::{spin_action, CliffordElement, PolarizedSpace, SpinVector};

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, EpError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(EpError::DimensionMismatch("ragged matrix".into()));
        }
        Ok(QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, EpError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[_]>::to_vec).collect()
    }

    fn same_shape(&self, o: &Self) -> Result<(), EpError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(EpError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, EpError> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(QMatrix { data, ..*self })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, EpError> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Ok(QMatrix { data, ..*self })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QMatrix { data: self.data.iter().map(|a| a * k).collect(), ..*self }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, EpError> {
        if self.cols != o.rows {
            return Err(EpError::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self (x) o`, row index `i * o.rows + k`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Result<Self, EpError> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    pub fn max_abs(&self) -> BigRational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, EpError> {
        if !self.is_square() {
            return Err(EpError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| EpError::BadInput("singular matrix".into()))?;
            for j in 0..n {
                a.data.swap(piv * n + j, col * n + j);
                inv.data.swap(piv * n + j, col * n + j);
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.data[col * n + j] /= &p;
                inv.data[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let x = &f * a.get(col, j);
                    a.data[r * n + j] -= x;
                    let y = &f * inv.get(col, j);
                    inv.data[r * n + j] -= y;
                }
            }
        }
        Ok(inv)
    }

    /// Rows and columns with the given indices.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A finite-dimensional `(g, K)`-model for the Dirac square check.
///
/// `p_C` has the basis `Y_i`, given as vectors of the polarized space
/// `e_1..e_m, f_1..f_m` (so `q` restricted to `p` is read off the Clifford
/// side); `k_C` has the basis `Z_a` with Gram matrix `k_gram`.
#[derive(Debug, Clone)]
pub struct DiracModel {
    pub n: usize,
    pub m: usize,
    pub basis: Vec<Vec<BigRational>>,
    /// `pi(Y_i)`
    pub pi_p: Vec<QMatrix>,
    /// `pi(Z_a)`
    pub pi_k: Vec<QMatrix>,
    /// `ad(Z_a)` on `p_C` in the `Y` basis: `[Z_a, Y_j] = sum_i ad[i][j] Y_i`.
    pub ad_p: Vec<QMatrix>,
    pub k_gram: QMatrix,
    pub pi_casimir: QMatrix,
    pub b_rho: BigRational,
    pub b_rho_k: BigRational,
}

impl DiracModel {
    /// Shapes agree and `pi` intertwines the `k`-action on `p`.
    pub fn validate(&self) -> Result<(), EpError> {
        let dim_p = 2 * self.m;
        let square_n = |x: &QMatrix| x.rows() == self.n && x.cols() == self.n;
        if self.basis.len() != dim_p || self.basis.iter().any(|v| v.len() != dim_p) {
            return Err(EpError::DimensionMismatch("basis of p".into()));
        }
        if self.pi_p.len() != dim_p || !self.pi_p.iter().all(square_n) {
            return Err(EpError::DimensionMismatch("pi on p".into()));
        }
        let dim_k = self.pi_k.len();
        if !self.pi_k.iter().all(square_n) || !square_n(&self.pi_casimir) {
            return Err(EpError::DimensionMismatch("pi on k".into()));
        }
        if self.ad_p.len() != dim_k || self.ad_p.iter().any(|a| a.rows() != dim_p || a.cols() != dim_p) {
            return Err(EpError::DimensionMismatch("ad on p".into()));
        }
        if self.k_gram.rows() != dim_k || self.k_gram.cols() != dim_k {
            return Err(EpError::DimensionMismatch("k gram".into()));
        }
        for (z, ad) in self.pi_k.iter().zip(&self.ad_p) {
            for j in 0..dim_p {
                let lhs = z.commutator(&self.pi_p[j])?;
                let mut rhs = QMatrix::zeros(self.n, self.n);
                for i in 0..dim_p {
                    rhs = rhs.add(&self.pi_p[i].scale(ad.get(i, j)))?;
                }
                if lhs != rhs {
                    return Err(EpError::BadInput("pi does not intertwine the k-action on p".into()));
                }
            }
        }
        Ok(())
    }
}

/// `D^2` against the right-hand side on `V (x) S`, split by spin parity.
#[derive(Debug, Clone)]
pub struct DiracReport {
    pub max_defect: BigRational,
    pub defect_plus: BigRational,
    pub defect_minus: BigRational,
    pub d_squared: QMatrix,
    pub rhs: QMatrix,
}

fn clifford_matrix(sp: &PolarizedSpace, v: &[BigRational]) -> Result<QMatrix, EpError> {
    let size = 1usize << sp.m();
    let c = CliffordElement::vector(v);
    let mut out = QMatrix::zeros(size, size);
    for s in 0..size {
        let img = spin_action(sp, &c, &SpinVector::basis(s as u64))?;
        for (t, x) in img.terms() {
            out.set(*t as usize, s, x.clone());
        }
    }
    Ok(out)
}

fn combine(coeffs: impl Iterator<Item = BigRational>, vectors: &[Vec<BigRational>]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); vectors[0].len()];
    for (c, v) in coeffs.zip(vectors) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += &c * x;
        }
    }
    out
}

/// Builds `D = sum_i pi(Y_i) (x) c(Y^i)` with `Y^i` the `q`-dual basis and
/// compares `D^2` with `(pi (x) s)(C_K) - pi(C) (x) 1 - B(rho) + B(rho_K)`,
/// where `s(Z) = -1/4 sum_i c(ad(Z) Y_i) c(Y^i)`.
pub fn dirac_square_check(model: &DiracModel, sp: &PolarizedSpace) -> Result<DiracReport, EpError> {
    if sp.m() != model.m {
        return Err(EpError::DimensionMismatch(format!("model has m = {}, space has m = {}", model.m, sp.m())));
    }
    model.validate()?;
    let dim_p = 2 * model.m;
    let spin = 1usize << model.m;
    let mut gram = QMatrix::zeros(dim_p, dim_p);
    for i in 0..dim_p {
        for j in 0..dim_p {
            gram.set(i, j, sp.q(&model.basis[i], &model.basis[j]));
        }
    }
    let ginv = gram.inverse()?;
    let dual: Vec<Vec<BigRational>> =
        (0..dim_p).map(|i| combine((0..dim_p).map(|j| ginv.get(j, i).clone()), &model.basis)).collect();
    let c_dual = dual.iter().map(|v| clifford_matrix(sp, v)).collect::<Result<Vec<_>, _>>()?;

    let mut d = QMatrix::zeros(model.n * spin, model.n * spin);
    for (p, c) in model.pi_p.iter().zip(&c_dual) {
        d = d.add(&p.kron(c))?;
    }
    let d_squared = d.mul(&d)?;

    let quarter = BigRational::new(BigInt::from(-1), BigInt::from(4));
    let id_v = QMatrix::identity(model.n);
    let id_s = QMatrix::identity(spin);
    let mut diag = Vec::with_capacity(model.pi_k.len());
    for (z, ad) in model.pi_k.iter().zip(&model.ad_p) {
        let mut s = QMatrix::zeros(spin, spin);
        for i in 0..dim_p {
            let image = combine((0..dim_p).map(|k| ad.get(k, i).clone()), &model.basis);
            s = s.add(&clifford_matrix(sp, &image)?.mul(&c_dual[i])?)?;
        }
        let s = s.scale(&quarter);
        diag.push(z.kron(&id_s).add(&id_v.kron(&s))?);
    }
    let hinv = model.k_gram.inverse()?;
    let mut rhs = QMatrix::zeros(model.n * spin, model.n * spin);
    for a in 0..diag.len() {
        for b in 0..diag.len() {
            if !hinv.get(a, b).is_zero() {
                rhs = rhs.add(&diag[a].mul(&diag[b])?.scale(hinv.get(a, b)))?;
            }
        }
    }
    rhs = rhs.sub(&model.pi_casimir.kron(&id_s))?;
    rhs = rhs.sub(&QMatrix::identity(model.n * spin).scale(&(&model.b_rho - &model.b_rho_k)))?;

    let diff = d_squared.sub(&rhs)?;
    let block = |parity: u32| -> Vec<usize> {
        (0..model.n * spin).filter(|i| ((i % spin) as u32).count_ones() % 2 == parity).collect()
    };
    Ok(DiracReport {
        max_defect: diff.max_abs(),
        defect_plus: diff.restrict(&block(0)).max_abs(),
        defect_minus: diff.restrict(&block(1)).max_abs(),
        d_squared,
        rhs,
    })
}

/// The `sl(2)` model on the irreducible module of dimension `dim`.
///
/// `k = C h`, `p = span(e, f)`, invariant form with `B(h, h) = 1`,
/// `B(e, f) = 1/2`. In the polarized space `Y_1 = e_1` stands for `e` and
/// `Y_2 = f_1` for `-2 f`.
pub fn sl2_model(dim: usize) -> Result<DiracModel, EpError> {
    if dim == 0 {
        return Err(EpError::BadInput("dimension must be positive".into()));
    }
    let top = dim as i64 - 1;
    let mut h = QMatrix::zeros(dim, dim);
    let mut e = QMatrix::zeros(dim, dim);
    let mut f = QMatrix::zeros(dim, dim);
    for k in 0..dim {
        let ki = k as i64;
        h.set(k, k, q(top - 2 * ki));
        if k + 1 < dim {
            f.set(k + 1, k, q(1));
            e.set(k, k + 1, q((ki + 1) * (top - ki)));
        }
    }
    let casimir = QMatrix::identity(dim).scale(&q(top * top + 2 * top));
    let basis = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
    Ok(DiracModel {
        n: dim,
        m: 1,
        basis,
        pi_p: vec![e, f.scale(&q(-2))],
        pi_k: vec![h],
        ad_p: vec![QMatrix::from_ints(&[&[2, 0], &[0, -2]])?],
        k_gram: QMatrix::from_ints(&[&[1]])?,
        pi_casimir: casimir,
        b_rho: q(1),
        b_rho_k: q(0),
    })
}
