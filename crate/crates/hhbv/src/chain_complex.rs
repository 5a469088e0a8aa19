//! Finite free complexes over Z, Z/m and Q, Smith normal form and homology.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeff::CoeffRing;
use crate::error::{Error, Result};

/// Dense matrix with integer entries. Over Z/m entries are kept in `[0, m)`;
/// over Q the entries are integers read as rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub ring: CoeffRing,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(ring: CoeffRing, rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { ring, rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(ring: CoeffRing, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(ring: CoeffRing, rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        let v = match &self.ring {
            CoeffRing::IntegersMod(m) => v.mod_floor(m),
            _ => v,
        };
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &BigInt) {
        let s = self.get(i, j) + v;
        self.set(i, j, s);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        if let CoeffRing::IntegersMod(m) = &self.ring {
            for x in out.data.iter_mut() {
                *x = x.mod_floor(m);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() && !x.is_zero() {
                    *o += a * x;
                }
            }
            if let CoeffRing::IntegersMod(m) = &self.ring {
                *o = o.mod_floor(m);
            }
        }
        out
    }

    /// The same entries viewed over Z.
    pub fn lift(&self) -> IntMatrix {
        IntMatrix { ring: CoeffRing::Integers, rows: self.rows, cols: self.cols, data: self.data.clone() }
    }

    fn to_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    fn from_dense(ring: CoeffRing, rows: usize, cols: usize, d: Vec<Vec<BigInt>>) -> IntMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in d {
            data.extend(r);
        }
        IntMatrix { ring, rows, cols, data }
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Exact determinant over Z by fraction-free elimination (square only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next. The inverses of `u` and `v` are kept as well.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct SnfWork {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    ui: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    vi: Vec<Vec<BigInt>>,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

impl SnfWork {
    // row_i += k * row_t
    fn row_add(&mut self, i: usize, t: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let rt = self.a[t].clone();
        for (x, y) in self.a[i].iter_mut().zip(rt.iter()) {
            *x += k * y;
        }
        let ut = self.u[t].clone();
        for (x, y) in self.u[i].iter_mut().zip(ut.iter()) {
            *x += k * y;
        }
        for row in self.ui.iter_mut() {
            let s = &row[i] * k;
            row[t] -= s;
        }
    }

    fn row_swap(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        self.a.swap(i, t);
        self.u.swap(i, t);
        for row in self.ui.iter_mut() {
            row.swap(i, t);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
        for row in self.ui.iter_mut() {
            row[i] = -row[i].clone();
        }
    }

    // col_j += k * col_t
    fn col_add(&mut self, j: usize, t: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let s = &row[t] * k;
            row[j] += s;
        }
        for row in self.v.iter_mut() {
            let s = &row[t] * k;
            row[j] += s;
        }
        let vj = self.vi[j].clone();
        for (x, y) in self.vi[t].iter_mut().zip(vj.iter()) {
            *x -= k * y;
        }
    }

    fn col_swap(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, t);
        }
        for row in self.v.iter_mut() {
            row.swap(j, t);
        }
        self.vi.swap(j, t);
    }
}

/// Smith normal form over Z.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Snf> {
    if m.ring != CoeffRing::Integers {
        return Err(Error::NotIntegers(m.ring.to_string()));
    }
    let (r, c) = (m.rows, m.cols);
    let mut w = SnfWork { a: m.to_dense(), u: ident(r), ui: ident(r), v: ident(c), vi: ident(c) };
    let mut rank = 0;
    for t in 0..r.min(c) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !w.a[i][j].is_zero() && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_add(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    w.row_swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_add(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    w.col_swap(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = w.a[t][t].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.row_neg(t);
        }
        rank += 1;
    }
    Ok(Snf {
        u: IntMatrix::from_dense(CoeffRing::Integers, r, r, w.u),
        d: IntMatrix::from_dense(CoeffRing::Integers, r, c, w.a),
        v: IntMatrix::from_dense(CoeffRing::Integers, c, c, w.v),
        u_inv: IntMatrix::from_dense(CoeffRing::Integers, r, r, w.ui),
        v_inv: IntMatrix::from_dense(CoeffRing::Integers, c, c, w.vi),
        rank,
    })
}

/// Columns of a matrix as a list of vectors.
fn columns(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.cols).map(|j| m.column(j)).collect()
}

fn matrix_from_columns(dim: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
    let mut m = IntMatrix::zeros(CoeffRing::Integers, dim, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}

/// Z-basis of the kernel of `m` (entries read over Z).
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(&m.lift()).expect("integer matrix");
    (snf.rank..m.cols).map(|j| snf.v.column(j)).collect()
}

/// Z-basis of the lattice spanned by the given vectors in Z^dim.
pub fn lattice_basis(dim: usize, gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let g = matrix_from_columns(dim, gens);
    let snf = smith_normal_form(&g).expect("integer matrix");
    // g * v = u_inv * d, so the first `rank` columns of u_inv scaled by d_i span the image
    (0..snf.rank)
        .map(|i| {
            let d = snf.d.get(i, i);
            snf.u_inv.column(i).into_iter().map(|x| x * d).collect()
        })
        .collect()
}

/// Quotient of the lattice with basis `basis` by the sublattice spanned by `gens`
/// (which must lie inside it): invariant factors > 1, free rank, and a
/// generating representative for each nontrivial cyclic summand.
pub struct LatticeQuotient {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub torsion_reps: Vec<Vec<BigInt>>,
    pub free_reps: Vec<Vec<BigInt>>,
}

pub fn lattice_quotient(dim: usize, basis: &[Vec<BigInt>], gens: &[Vec<BigInt>]) -> LatticeQuotient {
    let k = basis.len();
    if k == 0 {
        return LatticeQuotient { free_rank: 0, torsion: vec![], torsion_reps: vec![], free_reps: vec![] };
    }
    let kmat = matrix_from_columns(dim, basis);
    let ks = smith_normal_form(&kmat).expect("integer matrix");
    assert_eq!(ks.rank, k, "basis vectors must be independent");
    // coordinates of each generator in the basis
    let mut coords: Vec<Vec<BigInt>> = Vec::with_capacity(gens.len());
    for g in gens {
        let ug = ks.u.mul_vec(g);
        let y: Vec<BigInt> = (0..k)
            .map(|i| {
                let d = ks.d.get(i, i);
                assert!(ug[i].is_multiple_of(d), "generator outside the lattice");
                &ug[i] / d
            })
            .collect();
        assert!(ug[k..].iter().all(|x| x.is_zero()), "generator outside the lattice");
        coords.push(ks.v.mul_vec(&y));
    }
    let x = matrix_from_columns(k, &coords);
    let xs = smith_normal_form(&x).expect("integer matrix");
    let diag = xs.diagonal();
    let mut torsion = Vec::new();
    let mut torsion_reps = Vec::new();
    let mut free_reps = Vec::new();
    for i in 0..k {
        let d = if i < xs.rank { diag[i].clone() } else { BigInt::zero() };
        if d.is_one() {
            continue;
        }
        let rep = kmat.mul_vec(&xs.u_inv.column(i));
        if d.is_zero() {
            free_reps.push(rep);
        } else {
            torsion.push(d);
            torsion_reps.push(rep);
        }
    }
    LatticeQuotient { free_rank: k - xs.rank, torsion, torsion_reps, free_reps }
}

/// Membership test for the column span of a fixed matrix, with the Smith
/// form computed once. Over Z/m the span includes m·Z^n; over Q vectors must
/// already be scaled to integers.
#[derive(Clone, Debug)]
pub struct ImageTester {
    ring: CoeffRing,
    dim: usize,
    snf: Option<Snf>,
}

impl ImageTester {
    pub fn new(ring: &CoeffRing, d: Option<&IntMatrix>, dim: usize) -> ImageTester {
        let mut gens: Vec<Vec<BigInt>> = d.map(columns).unwrap_or_default();
        if let CoeffRing::IntegersMod(m) = ring {
            for i in 0..dim {
                let mut e = vec![BigInt::zero(); dim];
                e[i] = m.clone();
                gens.push(e);
            }
        }
        let snf = if gens.is_empty() || dim == 0 {
            None
        } else {
            Some(smith_normal_form(&matrix_from_columns(dim, &gens)).expect("integer matrix"))
        };
        ImageTester { ring: ring.clone(), dim, snf }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let Some(snf) = &self.snf else { return v.iter().all(|x| x.is_zero()) };
        let w = snf.u.mul_vec(v);
        w.iter().enumerate().all(|(i, x)| {
            if i < snf.rank {
                self.ring == CoeffRing::Rationals || x.is_multiple_of(snf.d.get(i, i))
            } else {
                x.is_zero()
            }
        })
    }
}

/// Whether `v` lies in the column span of `d` over the given ring. Over Q the
/// vector must already be scaled to integers; over Z/m it is read mod m.
pub fn in_image(ring: &CoeffRing, d: Option<&IntMatrix>, v: &[BigInt]) -> bool {
    ImageTester::new(ring, d, v.len()).contains(v)
}

/// Direction of the differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// d: C_k → C_{k−1}
    Chain,
    /// d: C^k → C^{k+1}
    Cochain,
}

impl Direction {
    fn step(self) -> i64 {
        match self {
            Direction::Chain => -1,
            Direction::Cochain => 1,
        }
    }
}

/// Bounded complex of finite free modules over a contiguous degree range.
/// `diffs[i]` is the differential leaving degree `min_degree + i`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub ring: CoeffRing,
    pub direction: Direction,
    pub min_degree: i64,
    pub ranks: Vec<usize>,
    pub diffs: Vec<IntMatrix>,
}

/// Homology of one degree. Over Z/m, `free_rank` counts summands Z/m and
/// `torsion` lists the proper invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub representatives: Vec<Vec<BigInt>>,
}

impl HomologySummary {
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| u64::try_from(t).expect("small torsion")).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("R^{}", self.free_rank));
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == self.torsion[i] {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z/{}", self.torsion[i]) } else { format!("(Z/{})^{}", self.torsion[i], j - i) });
            i = j;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FreeComplex {
    /// Builds the complex and checks shapes and d∘d = 0.
    pub fn new(ring: CoeffRing, direction: Direction, min_degree: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<FreeComplex> {
        if diffs.len() != ranks.len() {
            return Err(Error::Hypothesis("one differential per degree required".into()));
        }
        let c = FreeComplex { ring, direction, min_degree, ranks, diffs };
        for (i, d) in c.diffs.iter().enumerate() {
            let deg = c.min_degree + i as i64;
            let target = c.rank(deg + direction.step());
            if d.cols != c.ranks[i] || d.rows != target {
                return Err(Error::Hypothesis(format!("differential at degree {deg} has shape {}x{}, expected {}x{}", d.rows, d.cols, target, c.ranks[i])));
            }
            if d.ring != c.ring {
                return Err(Error::RingMismatch(d.ring.to_string(), c.ring.to_string()));
            }
        }
        for i in 0..c.diffs.len() {
            let deg = c.min_degree + i as i64;
            if let Some(next) = c.diff(deg + direction.step()) {
                let dd = next.mul(&c.diffs[i]);
                if !dd.is_zero() {
                    return Err(Error::Hypothesis(format!("d∘d ≠ 0 at degree {deg}")));
                }
            }
        }
        Ok(c)
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, k: i64) -> usize {
        if k < self.min_degree || k > self.max_degree() {
            0
        } else {
            self.ranks[(k - self.min_degree) as usize]
        }
    }

    /// The differential leaving degree `k`, if `k` is in range.
    pub fn diff(&self, k: i64) -> Option<&IntMatrix> {
        if k < self.min_degree || k > self.max_degree() {
            None
        } else {
            Some(&self.diffs[(k - self.min_degree) as usize])
        }
    }

    /// The differential arriving at degree `k`.
    pub fn incoming(&self, k: i64) -> Option<&IntMatrix> {
        self.diff(k - self.direction.step())
    }

    pub fn homology_at(&self, k: i64) -> HomologySummary {
        let n = self.rank(k);
        let empty = HomologySummary { degree: k, free_rank: 0, torsion: vec![], representatives: vec![] };
        if n == 0 {
            return empty;
        }
        let out = self.diff(k);
        let inc: Vec<Vec<BigInt>> = self.incoming(k).map(columns).unwrap_or_default();
        match &self.ring {
            CoeffRing::Integers | CoeffRing::Rationals => {
                let basis = match out {
                    Some(d) if d.rows > 0 => kernel_basis(d),
                    _ => ident(n),
                };
                let q = lattice_quotient(n, &basis, &inc);
                if self.ring == CoeffRing::Rationals {
                    HomologySummary { degree: k, free_rank: q.free_rank, torsion: vec![], representatives: q.free_reps }
                } else {
                    let mut reps = q.torsion_reps;
                    reps.extend(q.free_reps);
                    HomologySummary { degree: k, free_rank: q.free_rank, torsion: q.torsion, representatives: reps }
                }
            }
            CoeffRing::IntegersMod(m) => {
                // cycles: x with d x ≡ 0 (mod m), found as the kernel of [d | m·I]
                let cycles_gens: Vec<Vec<BigInt>> = match out {
                    Some(d) if d.rows > 0 => {
                        let r = d.rows;
                        let mut aug = IntMatrix::zeros(CoeffRing::Integers, r, n + r);
                        for i in 0..r {
                            for j in 0..n {
                                aug.set(i, j, d.get(i, j).clone());
                            }
                            aug.set(i, n + i, m.clone());
                        }
                        kernel_basis(&aug).into_iter().map(|v| v[..n].to_vec()).collect()
                    }
                    _ => ident(n),
                };
                let basis = lattice_basis(n, &cycles_gens);
                let mut gens = inc;
                for i in 0..n {
                    let mut e = vec![BigInt::zero(); n];
                    e[i] = m.clone();
                    gens.push(e);
                }
                let q = lattice_quotient(n, &basis, &gens);
                let mut free = 0;
                let mut torsion = Vec::new();
                let mut reps_t = Vec::new();
                let mut reps_f = Vec::new();
                for (t, r) in q.torsion.into_iter().zip(q.torsion_reps) {
                    let r: Vec<BigInt> = r.into_iter().map(|x| x.mod_floor(m)).collect();
                    if &t == m {
                        free += 1;
                        reps_f.push(r);
                    } else {
                        torsion.push(t);
                        reps_t.push(r);
                    }
                }
                reps_t.extend(reps_f);
                HomologySummary { degree: k, free_rank: free, torsion, representatives: reps_t }
            }
        }
    }

    /// Structured text form: one line per degree with the row-major matrix.
    pub fn to_text(&self) -> String {
        let mut s = format!("ring {}\ndirection {:?}\n", self.ring, self.direction);
        for (i, d) in self.diffs.iter().enumerate() {
            s.push_str(&format!("degree {} rank {} d {}\n", self.min_degree + i as i64, self.ranks[i], d));
        }
        s
    }
}

/// Total complex of a tensor product with d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy.
/// In total degree n the summands (p, n−p) are ordered by p descending; inside
/// a summand the basis is x_i⊗y_j in row-major order.
pub fn tensor_total_complex(a: &FreeComplex, b: &FreeComplex) -> Result<FreeComplex> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(a.ring.to_string(), b.ring.to_string()));
    }
    if a.direction != b.direction {
        return Err(Error::Unsupported("tensor of a chain complex with a cochain complex".into()));
    }
    let lo = a.min_degree + b.min_degree;
    let hi = a.max_degree() + b.max_degree();
    let layout = |n: i64| -> Vec<(i64, usize)> {
        let mut blocks = Vec::new();
        let mut off = 0;
        let mut p = a.max_degree();
        while p >= a.min_degree {
            let q = n - p;
            if q >= b.min_degree && q <= b.max_degree() {
                blocks.push((p, off));
                off += a.rank(p) * b.rank(q);
            }
            p -= 1;
        }
        blocks
    };
    let total_rank = |n: i64| -> usize { layout(n).iter().map(|&(p, _)| a.rank(p) * b.rank(n - p)).sum() };
    let step = a.direction.step();
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let src = layout(n);
        let tgt = layout(n + step);
        let rows = if n + step < lo || n + step > hi { 0 } else { total_rank(n + step) };
        let mut m = IntMatrix::zeros(a.ring.clone(), rows, total_rank(n));
        let find = |p: i64| tgt.iter().find(|&&(tp, _)| tp == p).map(|&(_, o)| o);
        for &(p, off) in &src {
            let q = n - p;
            let (ra, rb) = (a.rank(p), b.rank(q));
            let sign_q = if p.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
            // dx ⊗ y
            if let (Some(da), Some(to)) = (a.diff(p), find(p + step)) {
                let rb_t = b.rank(q);
                for i in 0..ra {
                    for i2 in 0..da.rows {
                        let c = da.get(i2, i);
                        if c.is_zero() {
                            continue;
                        }
                        for j in 0..rb {
                            m.add_at(to + i2 * rb_t + j, off + i * rb + j, c);
                        }
                    }
                }
            }
            // (−1)^p x ⊗ dy
            if let (Some(db), Some(to)) = (b.diff(q), find(p)) {
                let rb_t = b.rank(q + step);
                for j in 0..rb {
                    for j2 in 0..db.rows {
                        let c = db.get(j2, j);
                        if c.is_zero() {
                            continue;
                        }
                        let c = c * &sign_q;
                        for i in 0..ra {
                            m.add_at(to + i * rb_t + j2, off + i * rb + j, &c);
                        }
                    }
                }
            }
        }
        ranks.push(total_rank(n));
        diffs.push(m);
    }
    FreeComplex::new(a.ring.clone(), a.direction, lo, ranks, diffs)
}

/// Matrix of multiplication by c·σ^j on Z[Z/n] in the basis 1, σ, …, σ^{n−1}.
pub fn cyclic_mult_matrix(ring: &CoeffRing, n: usize, c: i64, j: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(ring.clone(), n, n);
    for i in 0..n {
        m.set((i + j) % n, i, BigInt::from(c));
    }
    m
}

/// Tor_1 over Z of Z[Z/n]/(nσ^{n−1}) and Z[Z/m]/(mτ^{m−1}), from the two-term
/// free resolutions of each quotient.
pub fn tor_one(n: usize, m: usize) -> HomologySummary {
    let z = CoeffRing::Integers;
    let two_term = |k: usize| {
        FreeComplex::new(
            z.clone(),
            Direction::Chain,
            0,
            vec![k, k],
            vec![IntMatrix::zeros(z.clone(), 0, k), cyclic_mult_matrix(&z, k, k as i64, k - 1)],
        )
        .expect("valid two-term complex")
    };
    let t = tensor_total_complex(&two_term(n), &two_term(m)).expect("same ring");
    t.homology_at(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CoeffRing {
        CoeffRing::Integers
    }

    fn is_diag_divisible(s: &Snf) -> bool {
        let d = s.diagonal();
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j && !s.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        d.windows(2).all(|w| w[0].is_zero() && w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])))
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_rows(z(), &[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert!(is_diag_divisible(&s));
        let zero = IntMatrix::zeros(z(), 2, 3);
        let s = smith_normal_form(&zero).unwrap();
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(z(), 2));
        assert_eq!(s.v, IntMatrix::identity(z(), 3));
        let s = smith_normal_form(&IntMatrix::from_rows(z(), &[vec![7]])).unwrap();
        assert_eq!(s.diagonal(), vec![BigInt::from(7)]);
        assert!(matches!(smith_normal_form(&IntMatrix::zeros(CoeffRing::modular(3), 1, 1)), Err(Error::NotIntegers(_))));
    }

    #[test]
    fn cokernel_of_n() {
        let c = FreeComplex::new(z(), Direction::Chain, 0, vec![1, 1], vec![IntMatrix::zeros(z(), 0, 1), IntMatrix::from_rows(z(), &[vec![5]])]).unwrap();
        let h = c.homology_at(0);
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion, vec![BigInt::from(5)]);
        assert!(c.homology_at(1).is_zero());
    }

    #[test]
    fn d_squared_checked() {
        let one = IntMatrix::from_rows(z(), &[vec![1]]);
        let r = FreeComplex::new(z(), Direction::Chain, 0, vec![1, 1, 1], vec![IntMatrix::zeros(z(), 0, 1), one.clone(), one]);
        assert!(r.is_err());
    }

    #[test]
    fn tensor_of_zero_maps() {
        let c = FreeComplex::new(z(), Direction::Chain, 0, vec![1, 1], vec![IntMatrix::zeros(z(), 0, 1), IntMatrix::zeros(z(), 1, 1)]).unwrap();
        let t = tensor_total_complex(&c, &c).unwrap();
        assert_eq!(t.ranks, vec![1, 2, 1]);
        assert!(t.diffs.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn tor_examples() {
        let h = tor_one(4, 2);
        assert_eq!((h.free_rank, h.torsion_u64()), (0, vec![2; 8]));
        let h = tor_one(2, 2);
        assert_eq!(h.torsion_u64(), vec![2; 4]);
        assert!(tor_one(3, 1).is_zero());
    }

    #[test]
    fn modular_homology() {
        // Z --2--> Z over Z/4: kernel {0,2}, image {0,2} in degree 0
        let c = FreeComplex::new(
            CoeffRing::modular(4),
            Direction::Chain,
            0,
            vec![1, 1],
            vec![IntMatrix::zeros(CoeffRing::modular(4), 0, 1), IntMatrix::from_rows(CoeffRing::modular(4), &[vec![2]])],
        )
        .unwrap();
        assert_eq!(c.homology_at(0).torsion_u64(), vec![2]);
        assert_eq!(c.homology_at(1).torsion_u64(), vec![2]);
    }

    #[test]
    fn image_membership() {
        let d = IntMatrix::from_rows(z(), &[vec![2], vec![4]]);
        assert!(in_image(&z(), Some(&d), &[BigInt::from(2), BigInt::from(4)]));
        assert!(!in_image(&z(), Some(&d), &[BigInt::from(1), BigInt::from(2)]));
        assert!(in_image(&CoeffRing::Rationals, Some(&d), &[BigInt::from(1), BigInt::from(2)]));
        assert!(in_image(&CoeffRing::modular(3), Some(&d), &[BigInt::from(1), BigInt::from(2)]));
    }
}
