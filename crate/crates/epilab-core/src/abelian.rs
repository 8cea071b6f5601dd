//! Exact integer linear algebra for finitely presented abelian groups.
//!
//! Everything downstream (rings, tensor squares, differentials) is carried by
//! finite abelian groups in invariant-factor form. The two workhorses are
//! [`smith_normal_form`] over arbitrary-precision integers and [`present`],
//! which turns "generators + relation lattice" into a canonical [`FpGroup`]
//! together with exact projection/section maps.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbelianError {
    #[error("element has {got} coordinates, group has rank {expected}")]
    BadElement { expected: usize, got: usize },
    #[error("subgroup closure exceeded cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
///
/// No intermediate step of any operation is allowed to overflow, hence
/// `BigInt` entries even though inputs are small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows,
            cols,
            entries: data.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(i, c) + q * self.get(j, c);
            self.set(i, c, v);
        }
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, i) + q * self.get(r, j);
            self.set(r, i, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c).clone();
            self.set(i, c, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Exact determinant by Bareiss fraction-free elimination. Panics if not square.
pub fn det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1).clone()
}

/// Smith normal form `u * m * v = d` with unimodular `u`, `v` and exact
/// inverses of both, kept in sync throughout the elimination.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

/// Diagonalize `m` by unimodular row/column operations.
///
/// Pivot strategy: minimal absolute value in the remaining block, with full
/// row/column reduction, which keeps coefficient growth tame at the sizes we
/// run. The diagonal satisfies `d_1 | d_2 | ...` and every diagonal entry is
/// non-negative.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let rows = m.rows;
    let cols = m.cols;
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Row op row_i += q*row_j on d means u <- E*u, so u_inv <- u_inv*E^{-1}:
    // col_j -= q*col_i. Column ops mirror this on v / v_inv.
    macro_rules! row_add {
        ($i:expr, $j:expr, $q:expr) => {{
            let q: BigInt = $q;
            d.add_row($i, $j, &q);
            u.add_row($i, $j, &q);
            u_inv.add_col($j, $i, &(-q));
        }};
    }
    macro_rules! col_add {
        ($i:expr, $j:expr, $q:expr) => {{
            let q: BigInt = $q;
            d.add_col($i, $j, &q);
            v.add_col($i, $j, &q);
            v_inv.add_row($j, $i, &(-q));
        }};
    }

    let mut t = 0;
    while t < rows && t < cols {
        // locate a minimal-absolute-value nonzero pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d.get(i, j).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d.get(i, j).abs() < d.get(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            // clear the pivot column
            let mut dirty = false;
            for i in t + 1..rows {
                if !d.get(i, t).is_zero() {
                    let q = -(d.get(i, t) / d.get(t, t));
                    row_add!(i, t, q);
                    if !d.get(i, t).is_zero() {
                        // remainder is strictly smaller; promote it to pivot
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                        u_inv.swap_cols(t, i);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // clear the pivot row
            for j in t + 1..cols {
                if !d.get(t, j).is_zero() {
                    let q = -(d.get(t, j) / d.get(t, t));
                    col_add!(j, t, q);
                    if !d.get(t, j).is_zero() {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                        v_inv.swap_rows(t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot divides its row and column; enforce divisibility of the
            // trailing block by folding a bad row into row t
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.get(i, j) % d.get(t, t)).is_zero());
            match bad {
                Some((i, _)) => {
                    row_add!(t, i, BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }

    debug_assert_eq!(u.mul(m).mul(&v), d, "u*m*v != d");
    debug_assert_eq!(u.mul(&u_inv), IntMatrix::identity(rows));
    debug_assert_eq!(v.mul(&v_inv), IntMatrix::identity(cols));
    Smith { u, d, v, u_inv, v_inv }
}

/// Finite abelian group in canonical invariant-factor form.
///
/// Factors satisfy `d_1 | d_2 | ...`, every factor is >= 2 (trivial factors
/// pruned), so structural equality is group isomorphism. Elements are
/// coordinate vectors reduced mod the factors; the trivial group has rank 0
/// and the empty vector as its only element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpGroup {
    factors: Vec<i64>,
}

impl FpGroup {
    /// Build from an invariant-factor chain. Panics unless each factor is
    /// >= 1 and divides the next; factor-1 entries are pruned.
    pub fn from_invariant_factors(factors: Vec<i64>) -> Self {
        let kept: Vec<i64> = factors.into_iter().filter(|&d| d != 1).collect();
        assert!(kept.iter().all(|&d| d >= 2), "factors must be positive");
        assert!(
            kept.windows(2).all(|w| w[1] % w[0] == 0),
            "factors must form a divisibility chain"
        );
        FpGroup { factors: kept }
    }

    pub fn trivial() -> Self {
        FpGroup { factors: vec![] }
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_invariant_factors(vec![n])
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> BigUint {
        self.factors
            .iter()
            .map(|&d| BigUint::from(d as u64))
            .product()
    }

    pub fn try_order_usize(&self) -> Option<usize> {
        self.order().to_usize()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn check_element(&self, x: &[i64]) -> Result<(), AbelianError> {
        if x.len() == self.rank() {
            Ok(())
        } else {
            Err(AbelianError::BadElement {
                expected: self.rank(),
                got: x.len(),
            })
        }
    }

    /// Reduce arbitrary integer coordinates to the canonical representative.
    pub fn canon(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.rank(), "coordinate length mismatch");
        x.iter()
            .zip(&self.factors)
            .map(|(&c, &d)| c.rem_euclid(d))
            .collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.canon(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.canon(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.canon(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Vec<i64> {
        self.canon(
            &a.iter()
                .zip(&self.factors)
                .map(|(&c, &d)| ((k % d) * (c % d)) % d)
                .collect::<Vec<_>>(),
        )
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().zip(&self.factors).all(|(&c, &d)| c % d == 0)
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &[i64]) -> i64 {
        a.iter()
            .zip(&self.factors)
            .map(|(&c, &d)| d / d.gcd(&c))
            .fold(1i64, |acc, o| acc.lcm(&o))
    }

    /// All elements in lexicographic coordinate order. Caller is responsible
    /// for checking the order is enumerable first.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            group: self,
            next: Some(self.zero()),
        }
    }
}

impl fmt::Display for FpGroup {
    fmt_group!();
}

macro_rules! fmt_group {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.factors.is_empty() {
                return write!(f, "0");
            }
            let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
            write!(f, "{}", parts.join(" + "))
        }
    };
}
use fmt_group;

pub struct ElementIter<'a> {
    group: &'a FpGroup,
    next: Option<Vec<i64>>,
}

impl<'a> Iterator for ElementIter<'a> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        // odometer, most significant coordinate first
        let mut i = succ.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.group.factors[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    }
}

/// An enumerated subgroup: sorted element list plus a membership index.
#[derive(Debug, Clone)]
pub struct Subgroup {
    elements: Vec<Vec<i64>>,
    index: HashSet<Vec<i64>>,
}

impl Subgroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains 0
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.index.contains(x)
    }

    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for Subgroup {}

const CLOSURE_CAP: usize = 1 << 22;

/// Smallest subgroup of `ambient` containing `gens`, fully enumerated.
pub fn subgroup_closure(ambient: &FpGroup, gens: &[Vec<i64>]) -> Result<Subgroup, AbelianError> {
    let gens: Vec<Vec<i64>> = gens.iter().map(|g| ambient.canon(g)).collect();
    let mut index = HashSet::new();
    let mut queue = VecDeque::new();
    let zero = ambient.zero();
    index.insert(zero.clone());
    queue.push_back(zero);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = ambient.add(&x, g);
            if index.insert(y.clone()) {
                if index.len() > CLOSURE_CAP {
                    return Err(AbelianError::ClosureCapExceeded { cap: CLOSURE_CAP });
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Vec<i64>> = index.iter().cloned().collect();
    elements.sort();
    Ok(Subgroup { elements, index })
}

/// A canonical quotient `Z^n / L` together with exact coordinate maps.
///
/// `project` sends raw generator coordinates to canonical group coordinates;
/// `lift` is a section (project . lift = identity on the group, and
/// lift . project differs from the input by a lattice element).
#[derive(Debug, Clone)]
pub struct Presentation {
    pub group: FpGroup,
    ngens: usize,
    moduli: Vec<i64>,
    proj: Vec<Vec<i64>>, // rank x ngens, row i reduced mod factor i
    lift: Vec<Vec<i64>>, // ngens x rank, row j reduced mod moduli j
}

impl Presentation {
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn project(&self, raw: &[i64]) -> Vec<i64> {
        assert_eq!(raw.len(), self.ngens, "raw coordinate length mismatch");
        let fs = self.group.factors();
        (0..self.group.rank())
            .map(|i| {
                let d = fs[i];
                let mut acc: i64 = 0;
                for (j, &x) in raw.iter().enumerate() {
                    acc = (acc + (self.proj[i][j] % d) * (x % d)).rem_euclid(d);
                }
                acc
            })
            .collect()
    }

    /// A representative in raw generator coordinates, reduced mod the
    /// generator moduli.
    pub fn lift(&self, elem: &[i64]) -> Vec<i64> {
        assert_eq!(elem.len(), self.group.rank(), "element length mismatch");
        (0..self.ngens)
            .map(|j| {
                let m = self.moduli[j];
                let mut acc: i64 = 0;
                for (i, &y) in elem.iter().enumerate() {
                    acc = (acc + (self.lift[j][i] % m) * (y % m)).rem_euclid(m);
                }
                acc
            })
            .collect()
    }
}

/// Present the quotient of `Z^ngens` by the lattice spanned by
/// `diag(moduli)` and the given relation vectors. All moduli must be >= 1,
/// which keeps the quotient finite.
pub fn present(moduli: &[i64], relations: &[Vec<i64>]) -> Presentation {
    let ngens = moduli.len();
    assert!(moduli.iter().all(|&m| m >= 1), "moduli must be >= 1");
    for r in relations {
        assert_eq!(r.len(), ngens, "relation length mismatch");
    }
    let mut a = IntMatrix::zero(ngens, ngens + relations.len());
    for (i, &m) in moduli.iter().enumerate() {
        a.set(i, i, BigInt::from(m));
    }
    for (c, r) in relations.iter().enumerate() {
        for (i, &x) in r.iter().enumerate() {
            a.set(i, ngens + c, BigInt::from(x));
        }
    }
    let snf = smith_normal_form(&a);
    let mut invariants = Vec::with_capacity(ngens);
    for i in 0..ngens {
        let s = snf.d.get(i, i).to_i64().expect("invariant factor overflow");
        assert!(s >= 1, "presentation is not finite");
        invariants.push(s);
    }
    let kept: Vec<usize> = (0..ngens).filter(|&i| invariants[i] > 1).collect();
    let group = FpGroup::from_invariant_factors(kept.iter().map(|&i| invariants[i]).collect());

    let proj: Vec<Vec<i64>> = kept
        .iter()
        .map(|&i| {
            let s = BigInt::from(invariants[i]);
            (0..ngens)
                .map(|j| {
                    (snf.u.get(i, j).mod_floor(&s))
                        .to_i64()
                        .expect("proj entry overflow")
                })
                .collect()
        })
        .collect();
    let lift: Vec<Vec<i64>> = (0..ngens)
        .map(|j| {
            let m = BigInt::from(moduli[j]);
            kept.iter()
                .map(|&i| {
                    (snf.u_inv.get(j, i).mod_floor(&m))
                        .to_i64()
                        .expect("lift entry overflow")
                })
                .collect()
        })
        .collect();
    Presentation {
        group,
        ngens,
        moduli: moduli.to_vec(),
        proj,
        lift,
    }
}

/// Quotient of a finite group by the subgroup generated by `relations`,
/// returned with projection and section maps.
pub fn quotient_presentation(
    ambient: &FpGroup,
    relations: &[Vec<i64>],
) -> Result<Presentation, AbelianError> {
    for r in relations {
        ambient.check_element(r)?;
    }
    Ok(present(ambient.factors(), relations))
}

/// The tensor product over Z of two finite groups, with its bilinear
/// pure-tensor map into canonical coordinates.
#[derive(Debug, Clone)]
pub struct ZTensor {
    pres: Presentation,
    a_rank: usize,
    b_rank: usize,
}

impl ZTensor {
    pub fn group(&self) -> &FpGroup {
        &self.pres.group
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    /// Raw coordinates of x (x) y in the generator basis e_i (x) f_j.
    pub fn pure_raw(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.a_rank);
        assert_eq!(y.len(), self.b_rank);
        let mut raw = vec![0i64; self.a_rank * self.b_rank];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                raw[i * self.b_rank + j] = xi * yj;
            }
        }
        raw
    }

    pub fn pure(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        self.pres.project(&self.pure_raw(x, y))
    }
}

/// `a (x)_Z b` presented on the generators e_i (x) f_j with moduli
/// gcd(d_i, e_j).
pub fn tensor_over_z(a: &FpGroup, b: &FpGroup) -> ZTensor {
    let mut moduli = Vec::with_capacity(a.rank() * b.rank());
    for &da in a.factors() {
        for &db in b.factors() {
            moduli.push(da.gcd(&db));
        }
    }
    ZTensor {
        pres: present(&moduli, &[]),
        a_rank: a.rank(),
        b_rank: b.rank(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "u*m*v != d");
        assert!(s.d.is_diagonal());
        assert_eq!(det(&s.u).abs(), BigInt::one(), "u not unimodular");
        assert_eq!(det(&s.v).abs(), BigInt::one(), "v not unimodular");
        let k = s.d.rows().min(s.d.cols());
        for i in 1..k {
            let prev = s.d.get(i - 1, i - 1);
            let cur = s.d.get(i, i);
            if prev.is_zero() {
                assert!(cur.is_zero(), "zero must stay terminal");
            } else {
                assert!((cur % prev).is_zero(), "divisibility chain broken");
            }
        }
        s
    }

    #[test]
    fn snf_diag_2_3_gives_1_6() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = check_snf(&m);
        assert_eq!(s.d.get(0, 0), &BigInt::from(1));
        assert_eq!(s.d.get(1, 1), &BigInt::from(6));
    }

    #[test]
    fn snf_identity_is_fixed() {
        let m = IntMatrix::identity(3);
        let s = check_snf(&m);
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_zero_is_fixed() {
        let m = IntMatrix::zero(2, 2);
        let s = check_snf(&m);
        assert_eq!(s.d, IntMatrix::zero(2, 2));
    }

    #[test]
    fn snf_known_4x4() {
        // invariant factors 1, 3, 21, 0
        let m = IntMatrix::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let s = check_snf(&m);
        let diag: Vec<i64> = (0..4).map(|i| s.d.get(i, i).to_i64().unwrap()).collect();
        assert_eq!(diag, vec![1, 3, 21, 0]);
    }

    #[test]
    fn snf_empty_and_thin() {
        check_snf(&IntMatrix::zero(0, 0));
        check_snf(&IntMatrix::zero(0, 3));
        check_snf(&IntMatrix::from_rows(&[vec![4], vec![6]]));
    }

    #[test]
    fn group_canonical_form_rejects_non_chain() {
        let r = std::panic::catch_unwind(|| FpGroup::from_invariant_factors(vec![2, 3]));
        assert!(r.is_err());
    }

    #[test]
    fn quotient_z4_by_2_is_z2() {
        let g = FpGroup::cyclic(4);
        let p = quotient_presentation(&g, &[vec![2]]).unwrap();
        assert_eq!(p.group.factors(), &[2]);
        // proj(1) generates, lift is a section
        let one = p.project(&[1]);
        assert_eq!(p.project(&p.lift(&one)), one);
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let g = FpGroup::cyclic(6);
        let p = quotient_presentation(&g, &[]).unwrap();
        assert_eq!(p.group, g);
    }

    #[test]
    fn quotient_klein_by_diagonal_is_z2() {
        let g = FpGroup::from_invariant_factors(vec![2, 2]);
        let p = quotient_presentation(&g, &[vec![1, 1]]).unwrap();
        assert_eq!(p.group.factors(), &[2]);
    }

    #[test]
    fn quotient_rejects_malformed_elements() {
        let g = FpGroup::cyclic(4);
        assert_eq!(
            quotient_presentation(&g, &[vec![1, 0]]),
            Err(AbelianError::BadElement { expected: 1, got: 2 }).map(|_: Presentation| ())
                .map_err(|e| e)
                .unwrap_err()
                .into(),
        );
    }

    #[test]
    fn tensor_coprime_is_trivial() {
        let t = tensor_over_z(&FpGroup::cyclic(2), &FpGroup::cyclic(3));
        assert!(t.group().is_trivial());
    }

    #[test]
    fn tensor_z2_z2_is_z2() {
        let t = tensor_over_z(&FpGroup::cyclic(2), &FpGroup::cyclic(2));
        assert_eq!(t.group().factors(), &[2]);
        assert_eq!(t.pure(&[1], &[1]), vec![1]);
    }

    #[test]
    fn tensor_klein_klein_has_order_16() {
        let k = FpGroup::from_invariant_factors(vec![2, 2]);
        let t = tensor_over_z(&k, &k);
        assert_eq!(t.group().try_order_usize(), Some(16));
    }

    #[test]
    fn pure_tensor_is_bilinear() {
        let a = FpGroup::from_invariant_factors(vec![2, 4]);
        let b = FpGroup::cyclic(6);
        let t = tensor_over_z(&a, &b);
        let g = t.group();
        for x in a.elements() {
            for y in b.elements() {
                for x2 in a.elements() {
                    let lhs = t.pure(&a.add(&x, &x2), &y);
                    let rhs = g.add(&t.pure(&x, &y), &t.pure(&x2, &y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn closure_of_nothing_is_zero() {
        let g = FpGroup::cyclic(12);
        let s = subgroup_closure(&g, &[]).unwrap();
        assert_eq!(s.elements(), &[vec![0]]);
    }

    #[test]
    fn closure_of_4_in_z12() {
        let g = FpGroup::cyclic(12);
        let s = subgroup_closure(&g, &[vec![4]]).unwrap();
        assert_eq!(s.elements(), &[vec![0], vec![4], vec![8]]);
    }

    #[test]
    fn closure_of_spanning_set_is_everything() {
        let g = FpGroup::from_invariant_factors(vec![2, 2]);
        let s = subgroup_closure(&g, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn quotient_order_matches_subgroup_index() {
        let g = FpGroup::from_invariant_factors(vec![2, 4, 8]);
        let rels = vec![vec![1, 2, 0], vec![0, 0, 4]];
        let p = quotient_presentation(&g, &rels).unwrap();
        let sub = subgroup_closure(&g, &rels).unwrap();
        assert_eq!(
            p.group.try_order_usize().unwrap() * sub.len(),
            g.try_order_usize().unwrap()
        );
    }

    #[test]
    fn lift_project_roundtrip_and_kernel() {
        let g = FpGroup::from_invariant_factors(vec![4, 8]);
        let rels = vec![vec![2, 2]];
        let p = quotient_presentation(&g, &rels).unwrap();
        let sub = subgroup_closure(&g, &rels).unwrap();
        for y in p.group.elements() {
            assert_eq!(p.project(&p.lift(&y)), y);
        }
        for x in g.elements() {
            let back = p.lift(&p.project(&x));
            assert!(sub.contains(&g.sub(&back, &x)));
        }
    }

    #[test]
    fn element_iteration_is_lexicographic() {
        let g = FpGroup::from_invariant_factors(vec![2, 2]);
        let all: Vec<_> = g.elements().collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn element_order_is_exact() {
        let g = FpGroup::from_invariant_factors(vec![2, 4]);
        assert_eq!(g.element_order(&[1, 0]), 2);
        assert_eq!(g.element_order(&[1, 1]), 4);
        assert_eq!(g.element_order(&[0, 2]), 2);
        assert_eq!(g.element_order(&[0, 0]), 1);
    }
}
