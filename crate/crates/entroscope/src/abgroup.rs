//! Finitely generated abelian groups presented by integer matrices.
//!
//! A group is `ℤ^k / L` for a relation lattice `L` kept in *canonical column
//! Hermite form*, so structural equality is matrix equality. Smith normal
//! form (with tracked transforms) provides invariant factors, free rank, and
//! the coordinate change that splits torsion from free part. Subgroups are
//! sub-lattices between the relation lattice and `ℤ^k`, again in canonical
//! form, which makes kernels, preimages, images, sums, and intersections all
//! exact lattice computations.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly::{det_bareiss_poly, IntPoly};

// ---------------------------------------------------------------------------
// Integer matrices.
// ---------------------------------------------------------------------------

/// Dense integer matrix (row-major).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    /// Zero matrix of the given shape.
    #[must_use]
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from rows; all rows must have equal length.
    ///
    /// # Errors
    ///
    /// `Parse` when the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols_hint: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols_hint, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("matrix rows have unequal lengths".into()));
        }
        Ok(IMat { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from machine integers (tests, examples).
    #[must_use]
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        IMat { rows: rows.len(), cols, data }
    }

    /// Builds from columns of the given height.
    #[must_use]
    pub fn from_cols(height: usize, cols: Vec<Vec<BigInt>>) -> Self {
        let mut m = IMat::zero(height, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), height);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    #[must_use]
    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    #[must_use]
    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = IMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get(i, j) + a * rhs.get(l, j);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    #[must_use]
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    #[must_use]
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        IMat { rows: self.rows, cols: self.cols, data }
    }

    #[must_use]
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        IMat { rows: self.rows, cols: self.cols, data }
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        IMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    /// Horizontal concatenation.
    #[must_use]
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut m = IMat::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                m.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        m
    }

    /// Matrix power by repeated squaring (square matrices).
    #[must_use]
    pub fn pow(&self, e: &BigUint) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut result = IMat::identity(self.rows);
        let mut base = self.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul(&base);
            }
            if i + 1 < bits {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Evaluates a polynomial at this matrix: `Σ cᵢ·Aⁱ`.
    #[must_use]
    pub fn poly_eval(&self, f: &IntPoly) -> Self {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut acc = IMat::zero(n, n);
        // Horner.
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let cur = acc.get(i, i) + c;
                acc.set(i, i, cur);
            }
        }
        acc
    }

    /// Characteristic polynomial `det(tI − A)` (monic), fraction-free.
    #[must_use]
    pub fn charpoly(&self) -> IntPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = vec![vec![IntPoly::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let diag = if i == j { IntPoly::t() } else { IntPoly::zero() };
                *cell = diag.sub(&IntPoly::constant(self.get(i, j).clone()));
            }
        }
        det_bareiss_poly(m)
    }

    /// Determinant (square matrices), via the polynomial Bareiss routine.
    #[must_use]
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let m = (0..n)
            .map(|i| (0..n).map(|j| IntPoly::constant(self.get(i, j).clone())).collect())
            .collect();
        det_bareiss_poly(m).coeff(0)
    }

    /// Canonical column Hermite form of the column lattice.
    ///
    /// Convention: columns ordered by strictly increasing pivot rows, each
    /// pivot positive, zeros above every pivot, entries to the left of a
    /// pivot (in its row) reduced into `[0, pivot)`, zero columns dropped.
    /// Two matrices span the same column lattice iff their forms are equal.
    #[must_use]
    pub fn col_hnf(&self) -> Self {
        let k = self.rows;
        let mut cols: Vec<Vec<BigInt>> = (0..self.cols).map(|j| self.col(j)).collect();
        let mut s = 0usize;
        for r in 0..k {
            // Combine columns s.. until at most one has a nonzero entry in
            // row r (Euclidean reduction on that row).
            loop {
                let mut nz: Vec<usize> =
                    (s..cols.len()).filter(|&j| !cols[j][r].is_zero()).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&j| cols[j][r].magnitude().clone());
                let jm = nz[0];
                for &j in &nz[1..] {
                    let q = cols[j][r].div_floor(&cols[jm][r]);
                    if !q.is_zero() {
                        for i in r..k {
                            let delta = &q * &cols[jm][i];
                            cols[j][i] -= delta;
                        }
                    }
                }
            }
            let Some(j0) = (s..cols.len()).find(|&j| !cols[j][r].is_zero()) else {
                continue;
            };
            cols.swap(s, j0);
            if cols[s][r].is_negative() {
                for x in cols[s].iter_mut() {
                    *x = -&*x;
                }
            }
            // Reduce pivot-row entries of the earlier columns into [0, pivot).
            let pivot_col = cols[s].clone();
            for col in cols.iter_mut().take(s) {
                let q = col[r].div_floor(&pivot_col[r]);
                if !q.is_zero() {
                    for i in r..k {
                        let delta = &q * &pivot_col[i];
                        col[i] -= delta;
                    }
                }
            }
            s += 1;
        }
        cols.truncate(s);
        IMat::from_cols(k, cols)
    }

    /// Basis of the integer kernel lattice `{x : A·x = 0}` (columns, in
    /// canonical Hermite form).
    #[must_use]
    pub fn kernel(&self) -> Self {
        let snf = self.snf();
        let min = self.rows.min(self.cols);
        let mut basis: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..self.cols {
            let free = j >= min || snf.d[j].is_zero();
            if free {
                basis.push(snf.v.col(j));
            }
        }
        IMat::from_cols(self.cols, basis).col_hnf()
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Smith normal form with tracked transforms.
// ---------------------------------------------------------------------------

/// Smith decomposition `U·A·V = D` with `D = diag(d)`, the `dᵢ ≥ 0` forming a
/// divisibility chain with zeros trailing; `U, V` unimodular with tracked
/// inverses.
#[derive(Clone, Debug)]
pub struct SnfDecomp {
    pub d: Vec<BigInt>,
    pub rank: usize,
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
    pub v_inv: IMat,
}

struct SnfWork {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl SnfWork {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.a.swap(a, b);
        self.u.swap(a, b);
        // U_inv gets its columns swapped.
        for row in &mut self.u_inv {
            row.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.a {
            row.swap(a, b);
        }
        for row in &mut self.v {
            row.swap(a, b);
        }
        self.v_inv.swap(a, b);
    }

    /// row(i) −= q·row(k)
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.a[i].len() {
            let delta = q * &self.a[k][j];
            self.a[i][j] -= delta;
        }
        for j in 0..self.u[i].len() {
            let delta = q * &self.u[k][j];
            self.u[i][j] -= delta;
        }
        // Inverse: col(k) += q·col(i) of U_inv.
        for row in &mut self.u_inv {
            let delta = q * &row[i];
            row[k] += delta;
        }
    }

    /// col(j) −= q·col(k)
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.a {
            let delta = q * &row[k];
            row[j] -= delta;
        }
        for row in &mut self.v {
            let delta = q * &row[k];
            row[j] -= delta;
        }
        // Inverse: row(k) += q·row(j) of V_inv.
        for idx in 0..self.v_inv[k].len() {
            let delta = q * &self.v_inv[j][idx];
            self.v_inv[k][idx] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        for x in &mut self.u[i] {
            *x = -&*x;
        }
        for row in &mut self.u_inv {
            row[i] = -&row[i];
        }
    }
}

impl IMat {
    /// Smith normal form with transforms (`U·A·V = D`).
    #[must_use]
    pub fn snf(&self) -> SnfDecomp {
        let (m, n) = (self.rows, self.cols);
        let mut w = SnfWork {
            a: (0..m).map(|i| self.row(i)).collect(),
            u: (0..m).map(|i| identity_row(m, i)).collect(),
            u_inv: (0..m).map(|i| identity_row(m, i)).collect(),
            v: (0..n).map(|i| identity_row(n, i)).collect(),
            v_inv: (0..n).map(|i| identity_row(n, i)).collect(),
        };
        let min = m.min(n);
        let mut k = 0usize;
        while k < min {
            // Pick the smallest-magnitude nonzero entry as the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if !w.a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| {
                            w.a[i][j].magnitude() < w.a[bi][bj].magnitude()
                        })
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            loop {
                // Clear column k below the pivot.
                let mut dirty = false;
                for i in k + 1..m {
                    if w.a[i][k].is_zero() {
                        continue;
                    }
                    let q = div_nearest(&w.a[i][k], &w.a[k][k]);
                    w.row_sub(i, k, &q);
                    if !w.a[i][k].is_zero() {
                        // Remainder is strictly smaller: make it the pivot.
                        w.swap_rows(k, i);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // Clear row k right of the pivot.
                for j in k + 1..n {
                    if w.a[k][j].is_zero() {
                        continue;
                    }
                    let q = div_nearest(&w.a[k][j], &w.a[k][k]);
                    w.col_sub(j, k, &q);
                    if !w.a[k][j].is_zero() {
                        w.swap_cols(k, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // Divisibility: the pivot must divide every remaining entry.
                let mut fixed = true;
                'scan: for i in k + 1..m {
                    for j in k + 1..n {
                        if !w.a[i][j].mod_floor(&w.a[k][k]).is_zero() {
                            let one = BigInt::from(-1);
                            w.row_sub(k, i, &one); // row k += row i
                            fixed = false;
                            break 'scan;
                        }
                    }
                }
                if fixed {
                    break;
                }
            }
            if w.a[k][k].is_negative() {
                w.negate_row(k);
            }
            k += 1;
        }
        let rank = k;
        let d: Vec<BigInt> = (0..min).map(|i| w.a[i][i].clone()).collect();
        SnfDecomp {
            d,
            rank,
            u: IMat::from_rows(w.u, m).expect("square"),
            u_inv: IMat::from_rows(w.u_inv, m).expect("square"),
            v: IMat::from_rows(w.v, n).expect("square"),
            v_inv: IMat::from_rows(w.v_inv, n).expect("square"),
        }
    }
}

fn identity_row(n: usize, i: usize) -> Vec<BigInt> {
    let mut r = vec![BigInt::zero(); n];
    r[i] = BigInt::one();
    r
}

/// Round-to-nearest integer division (keeps Smith pivots small).
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    // r has the sign of b, with |r| < |b|.  When 2|r| > |b| the adjusted
    // remainder r − b is strictly smaller in magnitude for either sign of b,
    // so rounding toward q + 1 always shrinks it.
    if r.magnitude() * 2u32 > *b.magnitude() {
        q + 1
    } else {
        q
    }
}

// ---------------------------------------------------------------------------
// Lattice helpers on Hermite bases.
// ---------------------------------------------------------------------------

/// Pivot row index of each column of a canonical Hermite basis.
#[must_use]
pub fn hnf_pivots(h: &IMat) -> Vec<usize> {
    (0..h.cols())
        .map(|j| (0..h.rows()).find(|&i| !h.get(i, j).is_zero()).expect("no zero columns"))
        .collect()
}

/// Expresses `v` in the column lattice of a canonical Hermite basis:
/// `Some(x)` with `H·x = v`, or `None` when `v` is outside.
#[must_use]
pub fn express_in_hnf(h: &IMat, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(h.rows(), v.len());
    let pivots = hnf_pivots(h);
    let mut rem = v.to_vec();
    let mut x = vec![BigInt::zero(); h.cols()];
    for (j, &r) in pivots.iter().enumerate() {
        // Rows above r are already cleared in all later columns.
        let (q, remdr) = rem[r].div_rem(h.get(r, j));
        if !remdr.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for i in r..h.rows() {
                let delta = &q * h.get(i, j);
                rem[i] -= delta;
            }
        }
        x[j] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(x)
    } else {
        None
    }
}

/// Canonical coset representative of `v` modulo the column lattice of a
/// canonical Hermite basis: pivot-row entries land in `[0, pivot)`.
#[must_use]
pub fn canonical_residue(h: &IMat, v: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(h.rows(), v.len());
    let pivots = hnf_pivots(h);
    let mut rem = v.to_vec();
    for (j, &r) in pivots.iter().enumerate() {
        let q = rem[r].div_floor(h.get(r, j));
        if !q.is_zero() {
            for i in r..h.rows() {
                let delta = &q * h.get(i, j);
                rem[i] -= delta;
            }
        }
    }
    rem
}

// ---------------------------------------------------------------------------
// Groups and subgroups.
// ---------------------------------------------------------------------------

/// A finitely generated abelian group `ℤ^k / L`, with `L` in canonical
/// Hermite form and the Smith invariants cached.
#[derive(Clone, PartialEq, Eq)]
pub struct FgAbGroup {
    ambient: usize,
    relations: IMat,
    inv_factors: Vec<BigInt>,
}

impl FgAbGroup {
    /// Builds `ℤ^ambient / ⟨relation generators⟩` (columns of `relations`).
    #[must_use]
    pub fn new(ambient: usize, relations: &IMat) -> Self {
        assert_eq!(relations.rows(), ambient, "relation height must match ambient rank");
        let relations = relations.col_hnf();
        let snf = relations.snf();
        let inv_factors = snf.d[..snf.rank].to_vec();
        FgAbGroup { ambient, relations, inv_factors }
    }

    /// The free group `ℤ^k`.
    #[must_use]
    pub fn free(ambient: usize) -> Self {
        FgAbGroup::new(ambient, &IMat::zero(ambient, 0))
    }

    #[must_use]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Canonical relation basis (column Hermite form).
    #[must_use]
    pub fn relations(&self) -> &IMat {
        &self.relations
    }

    /// Invariant factors `d₁ | d₂ | …` of the relation lattice (1s included).
    #[must_use]
    pub fn inv_factors(&self) -> &[BigInt] {
        &self.inv_factors
    }

    /// Rank of the free part.
    #[must_use]
    pub fn free_rank(&self) -> usize {
        self.ambient - self.inv_factors.len()
    }

    /// Group order (`None` when infinite).
    #[must_use]
    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.inv_factors.iter().map(BigInt::magnitude).product())
    }

    /// Exponent of the torsion part (1 when torsion-free).
    #[must_use]
    pub fn torsion_exponent(&self) -> BigUint {
        self.inv_factors.last().map_or_else(BigUint::one, |d| d.magnitude().clone())
    }

    #[must_use]
    pub fn is_trivial(&self) -> bool {
        self.order().is_some_and(|o| o.is_one())
    }

    /// Canonical coset representative of an ambient vector.
    #[must_use]
    pub fn residue(&self, v: &[BigInt]) -> Vec<BigInt> {
        canonical_residue(&self.relations, v)
    }

    /// Isomorphism summary such as `Z^2 (+) Z/2 (+) Z/6`; `0` when trivial.
    #[must_use]
    pub fn iso_summary(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let r = self.free_rank();
        if r == 1 {
            parts.push("Z".to_string());
        } else if r > 1 {
            parts.push(format!("Z^{r}"));
        }
        for d in &self.inv_factors {
            if !d.is_one() {
                parts.push(format!("Z/{d}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" (+) ")
        }
    }

    /// Does `phi` descend to an endomorphism of this group
    /// (`phi·L ⊆ L` for the relation lattice `L`)?
    #[must_use]
    pub fn preserves_relations(&self, phi: &IMat) -> bool {
        if phi.rows() != self.ambient || phi.cols() != self.ambient {
            return false;
        }
        (0..self.relations.cols()).all(|j| {
            let img = phi.mul_vec(&self.relations.col(j));
            self.relations.cols() > 0 && express_in_hnf(&self.relations, &img).is_some()
                || img.iter().all(Zero::is_zero)
        })
    }

    /// Subgroup generated by the given ambient vectors (relations included).
    #[must_use]
    pub fn subgroup(&self, gens: &[Vec<BigInt>]) -> Subgroup {
        let g = IMat::from_cols(self.ambient, gens.to_vec());
        Subgroup { basis: g.hstack(&self.relations).col_hnf() }
    }

    /// Subgroup from a lattice basis matrix (relations joined in).
    #[must_use]
    pub fn subgroup_from_matrix(&self, basis: &IMat) -> Subgroup {
        Subgroup { basis: basis.hstack(&self.relations).col_hnf() }
    }

    /// The whole group as a subgroup.
    #[must_use]
    pub fn whole_subgroup(&self) -> Subgroup {
        Subgroup { basis: IMat::identity(self.ambient).col_hnf() }
    }

    /// The zero subgroup.
    #[must_use]
    pub fn zero_subgroup(&self) -> Subgroup {
        Subgroup { basis: self.relations.clone() }
    }

    /// Quotient group by a subgroup.
    #[must_use]
    pub fn quotient(&self, n: &Subgroup) -> FgAbGroup {
        FgAbGroup::new(self.ambient, &n.basis)
    }

    /// Torsion subgroup: saturation of the relation lattice.
    #[must_use]
    pub fn torsion_subgroup(&self) -> Subgroup {
        Subgroup { basis: saturation(&self.relations, self.ambient) }
    }

    /// Coordinate split into torsion and free parts (cached Smith data).
    #[must_use]
    pub fn decomposition(&self) -> GroupDecomposition {
        let snf = self.relations.snf();
        GroupDecomposition {
            ambient: self.ambient,
            torsion_count: snf.rank,
            moduli: snf.d[..snf.rank].to_vec(),
            u: snf.u,
            u_inv: snf.u_inv,
        }
    }

    /// Enumerates canonical representatives of all elements (finite groups).
    ///
    /// # Errors
    ///
    /// `Resource` when the group is infinite or larger than `cap`.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<Vec<BigInt>>> {
        let order = self
            .order()
            .ok_or_else(|| Error::Resource("cannot enumerate an infinite group".into()))?;
        if order > BigUint::from(cap) {
            return Err(Error::Resource(format!(
                "group of order {order} exceeds enumeration cap {cap}"
            )));
        }
        let dec = self.decomposition();
        let mut elements = Vec::new();
        let mut counters: Vec<BigInt> = vec![BigInt::zero(); dec.torsion_count];
        loop {
            // y has torsion coords = counters, free coords 0 (none exist here).
            let mut y = vec![BigInt::zero(); self.ambient];
            y[..dec.torsion_count].clone_from_slice(&counters);
            let x = dec.u_inv.mul_vec(&y);
            elements.push(self.residue(&x));
            // Increment the mixed-radix counter.
            let mut i = 0;
            loop {
                if i == counters.len() {
                    let mut seen = std::collections::HashSet::new();
                    elements.retain(|e| seen.insert(format!("{e:?}")));
                    debug_assert_eq!(BigUint::from(elements.len() as u64), order);
                    return Ok(elements);
                }
                counters[i] += 1;
                if counters[i] < dec.moduli[i] {
                    break;
                }
                counters[i] = BigInt::zero();
                i += 1;
            }
        }
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({})", self.iso_summary())
    }
}

/// Smith coordinate split of a group: `y = U·x` maps the relation lattice
/// onto `⊕ dᵢ·eᵢ`, so torsion lives in the first `torsion_count` coordinates
/// and the free part in the rest.
#[derive(Clone, Debug)]
pub struct GroupDecomposition {
    pub ambient: usize,
    pub torsion_count: usize,
    pub moduli: Vec<BigInt>,
    pub u: IMat,
    pub u_inv: IMat,
}

/// Saturation of a column lattice inside `ℤ^ambient`:
/// `{x : m·x ∈ L for some m ≥ 1}`.
#[must_use]
fn saturation(basis: &IMat, ambient: usize) -> IMat {
    if basis.cols() == 0 {
        return IMat::zero(ambient, 0).col_hnf();
    }
    let snf = basis.snf();
    let mut cols = Vec::new();
    for i in 0..snf.rank {
        cols.push(snf.u_inv.col(i));
    }
    IMat::from_cols(ambient, cols).col_hnf()
}

/// A subgroup of an [`FgAbGroup`]: a lattice between the relation lattice
/// and `ℤ^k`, in canonical Hermite form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    basis: IMat,
}

impl Subgroup {
    #[must_use]
    pub fn basis(&self) -> &IMat {
        &self.basis
    }

    /// Membership of an ambient vector.
    #[must_use]
    pub fn contains(&self, v: &[BigInt]) -> bool {
        express_in_hnf(&self.basis, v).is_some()
    }

    /// Lattice-rank of the subgroup basis.
    #[must_use]
    pub fn lattice_rank(&self) -> usize {
        self.basis.cols()
    }

    /// Containment of subgroups (as lattices).
    #[must_use]
    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        (0..self.basis.cols()).all(|j| other.contains(&self.basis.col(j)))
    }

    /// Order of the subgroup inside its parent group (`None` if infinite),
    /// i.e. `|L / relations|`.
    #[must_use]
    pub fn order_in(&self, parent: &FgAbGroup) -> Option<BigUint> {
        let rel = parent.relations();
        if self.basis.cols() != rel.cols() {
            return None; // ranks differ ⇒ infinite
        }
        if rel.cols() == 0 {
            return Some(BigUint::one());
        }
        // Express each relation column in the subgroup basis; the index is
        // |det| of the coordinate matrix.
        let mut coords = Vec::new();
        for j in 0..rel.cols() {
            let x = express_in_hnf(&self.basis, &rel.col(j))
                .expect("relations are contained in every subgroup");
            coords.push(x);
        }
        let x = IMat::from_cols(self.basis.cols(), coords);
        let det = x.det();
        debug_assert!(!det.is_zero());
        Some(det.magnitude().clone())
    }

    /// Index `[M : N]` of this subgroup in the parent (`None` if infinite).
    #[must_use]
    pub fn index_in(&self, parent: &FgAbGroup) -> Option<BigUint> {
        parent.quotient(self).order()
    }

    /// Sum of two subgroups of the same parent.
    #[must_use]
    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        Subgroup { basis: self.basis.hstack(&other.basis).col_hnf() }
    }

    /// Intersection of two subgroups of the same parent.
    #[must_use]
    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let a = &self.basis;
        let b = &other.basis;
        if a.cols() == 0 {
            return self.clone();
        }
        if b.cols() == 0 {
            return other.clone();
        }
        // Kernel of [A | −B]: x-part gives coefficients of vectors in both.
        let stacked = a.hstack(&b.neg());
        let ker = stacked.kernel();
        let mut gens = Vec::new();
        for j in 0..ker.cols() {
            let coeffs = ker.col(j);
            let v = a.mul_vec(&coeffs[..a.cols()]);
            gens.push(v);
        }
        Subgroup { basis: IMat::from_cols(a.rows(), gens).col_hnf() }
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(basis {:?})", self.basis)
    }
}

/// Image `φ(N) + relations` of a subgroup under an ambient matrix.
#[must_use]
pub fn image_subgroup(parent: &FgAbGroup, phi: &IMat, n: &Subgroup) -> Subgroup {
    let mut gens = Vec::new();
    for j in 0..n.basis().cols() {
        gens.push(phi.mul_vec(&n.basis().col(j)));
    }
    parent.subgroup(&gens)
}

/// Preimage `{x : φ·x ∈ N}` of a subgroup under an ambient matrix.
#[must_use]
pub fn preimage_subgroup(parent: &FgAbGroup, phi: &IMat, n: &Subgroup) -> Subgroup {
    let t = n.basis();
    if t.cols() == 0 {
        // Preimage of the zero lattice is the plain integer kernel.
        let ker = phi.kernel();
        return parent.subgroup_from_matrix(&ker);
    }
    let stacked = phi.hstack(&t.neg());
    let ker = stacked.kernel();
    let mut gens = Vec::new();
    for j in 0..ker.cols() {
        let coeffs = ker.col(j);
        gens.push(coeffs[..phi.cols()].to_vec());
    }
    parent.subgroup(&gens)
}

/// Kernel of `φ` acting on the group (preimage of the zero subgroup).
#[must_use]
pub fn kernel_subgroup(parent: &FgAbGroup, phi: &IMat) -> Subgroup {
    preimage_subgroup(parent, phi, &parent.zero_subgroup())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn hnf_is_canonical_under_column_shuffles() {
        let m1 = IMat::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let m2 = IMat::from_i64_rows(&[&[4, 4, 2], &[12, 6, -6], &[16, 4, 10]]);
        assert_eq!(m1.col_hnf(), m2.col_hnf());
        // Unimodular recombination leaves the lattice unchanged.
        let u = IMat::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 3, 1]]);
        let m3 = m1.mul(&u);
        assert_eq!(m1.col_hnf(), m3.col_hnf());
    }

    #[test]
    fn hnf_shape_properties() {
        let m = IMat::from_i64_rows(&[&[0, 2, 1], &[4, 2, 0], &[0, 0, 0]]);
        let h = m.col_hnf();
        let pivots = hnf_pivots(&h);
        // Strictly increasing pivot rows, positive pivots, zeros above.
        for w in pivots.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (j, &r) in pivots.iter().enumerate() {
            assert!(h.get(r, j).is_positive());
            for i in 0..r {
                assert!(h.get(i, j).is_zero());
            }
            for jj in 0..j {
                let e = h.get(r, jj);
                assert!(!e.is_negative() && e < h.get(r, j));
            }
        }
    }

    #[test]
    fn snf_transforms_are_consistent() {
        let a = IMat::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = a.snf();
        let d = {
            let mut d = IMat::zero(3, 3);
            for (i, x) in s.d.iter().enumerate() {
                d.set(i, i, x.clone());
            }
            d
        };
        assert_eq!(s.u.mul(&a).mul(&s.v), d);
        assert_eq!(s.u.mul(&s.u_inv), IMat::identity(3));
        assert_eq!(s.u_inv.mul(&s.u), IMat::identity(3));
        assert_eq!(s.v.mul(&s.v_inv), IMat::identity(3));
        // Divisibility chain.
        for w in s.d[..s.rank].windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero());
        }
    }

    #[test]
    fn kernel_of_projection() {
        // A = [1 0 2; 0 2 2]: kernel is spanned by (−2, −1, 1).
        let a = IMat::from_i64_rows(&[&[1, 0, 2], &[0, 2, 2]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        let v = k.col(0);
        assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        assert_eq!(v[2].magnitude().to_string(), "1");
    }

    #[test]
    fn group_structure_summary() {
        // Z³ / ⟨2e₁, 6e₂⟩ ≅ Z ⊕ Z/2 ⊕ Z/6
        let rel = IMat::from_i64_rows(&[&[2, 0], &[0, 6], &[0, 0]]);
        let g = FgAbGroup::new(3, &rel);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.iso_summary(), "Z (+) Z/2 (+) Z/6");
        assert_eq!(g.order(), None);
        assert_eq!(g.torsion_exponent(), BigUint::from(6u32));

        let t = FgAbGroup::new(2, &IMat::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(t.order(), Some(BigUint::from(6u32)));
        assert_eq!(t.iso_summary(), "Z/6");
        assert!(FgAbGroup::new(1, &IMat::from_i64_rows(&[&[1]])).is_trivial());
        assert_eq!(FgAbGroup::free(2).iso_summary(), "Z^2");
    }

    #[test]
    fn subgroup_membership_and_order() {
        // Z/4 ⊕ Z/4, subgroup generated by (2, 0) and (0, 2).
        let g = FgAbGroup::new(2, &IMat::from_i64_rows(&[&[4, 0], &[0, 4]]));
        let n = g.subgroup(&[vec![b(2), b(0)], vec![b(0), b(2)]]);
        assert_eq!(n.order_in(&g), Some(BigUint::from(4u32)));
        assert_eq!(n.index_in(&g), Some(BigUint::from(4u32)));
        assert!(n.contains(&[b(2), b(2)]));
        assert!(n.contains(&[b(4), b(0)])); // a relation
        assert!(!n.contains(&[b(1), b(0)]));
        // |M| = |N| · |M/N|
        let q = g.quotient(&n);
        assert_eq!(
            g.order().unwrap(),
            n.order_in(&g).unwrap() * q.order().unwrap()
        );
    }

    #[test]
    fn sum_intersection_duality() {
        let g = FgAbGroup::free(2);
        let a = g.subgroup(&[vec![b(2), b(0)]]);
        let c = g.subgroup(&[vec![b(3), b(0)]]);
        let s = a.sum(&c);
        let i = a.intersect(&c);
        // ⟨2e₁⟩ + ⟨3e₁⟩ = ⟨e₁⟩, ⟨2e₁⟩ ∩ ⟨3e₁⟩ = ⟨6e₁⟩
        assert!(s.contains(&[b(1), b(0)]));
        assert!(i.contains(&[b(6), b(0)]));
        assert!(!i.contains(&[b(3), b(0)]));
        assert!(i.is_subset_of(&a) && i.is_subset_of(&c));
        assert!(a.is_subset_of(&s) && c.is_subset_of(&s));
    }

    #[test]
    fn preimage_and_kernel() {
        // φ = doubling on Z²: kernel 0; preimage of ⟨2e₁, 2e₂⟩ is Z².
        let g = FgAbGroup::free(2);
        let phi = IMat::from_i64_rows(&[&[2, 0], &[0, 2]]);
        let ker = kernel_subgroup(&g, &phi);
        assert_eq!(ker.basis().cols(), 0);
        let n = g.subgroup(&[vec![b(2), b(0)], vec![b(0), b(2)]]);
        let pre = preimage_subgroup(&g, &phi, &n);
        assert!(pre.contains(&[b(1), b(0)]) && pre.contains(&[b(0), b(1)]));
        // Image of Z² under φ is ⟨2e₁, 2e₂⟩.
        let img = image_subgroup(&g, &phi, &g.whole_subgroup());
        assert_eq!(img, n);
    }

    #[test]
    fn kernel_on_torsion_group() {
        // M = Z/2 ⊕ Z, φ = (x, y) ↦ (x + y mod 2, 0): kernel has basis work
        // over the relation lattice.
        let g = FgAbGroup::new(2, &IMat::from_i64_rows(&[&[2, 0], &[0, 0]]));
        let phi = IMat::from_i64_rows(&[&[1, 1], &[0, 0]]);
        assert!(g.preserves_relations(&phi));
        let ker = kernel_subgroup(&g, &phi);
        // Elements (x, y) with x + y even: contains (1,1), (0,2), (2,0).
        assert!(ker.contains(&[b(1), b(1)]));
        assert!(ker.contains(&[b(0), b(2)]));
        assert!(!ker.contains(&[b(1), b(0)]));
    }

    #[test]
    fn torsion_subgroup_is_saturation() {
        // Z ⊕ Z/4 presented on ambient Z²: torsion = ⟨e₂⟩.
        let g = FgAbGroup::new(2, &IMat::from_i64_rows(&[&[0, 0], &[0, 4]]));
        let t = g.torsion_subgroup();
        assert!(t.contains(&[b(0), b(1)]));
        assert!(!t.contains(&[b(1), b(0)]));
        assert_eq!(t.order_in(&g), Some(BigUint::from(4u32)));
    }

    #[test]
    fn charpoly_companion() {
        let a = IMat::from_i64_rows(&[&[0, 1], &[1, 1]]);
        assert_eq!(a.charpoly(), IntPoly::from_i64s(&[-1, -1, 1]));
        let i3 = IMat::identity(3);
        assert_eq!(i3.charpoly(), IntPoly::from_i64s(&[-1, 1]).pow(3));
        assert_eq!(a.det(), b(-1));
    }

    #[test]
    fn poly_eval_on_matrix() {
        let a = IMat::from_i64_rows(&[&[0, 1], &[1, 1]]);
        // a² − a − I = 0 (Cayley–Hamilton for t² − t − 1).
        let z = a.poly_eval(&IntPoly::from_i64s(&[-1, -1, 1]));
        assert!(z.is_zero());
    }

    #[test]
    fn enumerate_small_groups() {
        let g = FgAbGroup::new(2, &IMat::from_i64_rows(&[&[2, 0], &[0, 3]]));
        let els = g.enumerate_elements(100).unwrap();
        assert_eq!(els.len(), 6);
        assert!(FgAbGroup::free(1).enumerate_elements(100).is_err());
    }

    #[test]
    fn matrix_power() {
        let a = IMat::from_i64_rows(&[&[0, 1], &[1, 1]]);
        let a6 = a.pow(&BigUint::from(6u32));
        // Fibonacci: F₆ = 8, F₇ = 13.
        assert_eq!(*a6.get(1, 1), b(13));
        assert_eq!(*a6.get(0, 1), b(8));
        assert_eq!(a.pow(&BigUint::zero()), IMat::identity(2));
    }
}
