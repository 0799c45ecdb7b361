//! Finite root data of an irreducible root system and its Weyl group.
//!
//! Conventions used throughout the crate:
//!
//! * the Cartan matrix is `A[i][j] = <alpha_j, alpha_i^vee>`;
//! * weights are written in the fundamental weight basis, coweights in the
//!   simple coroot basis (so the pairing is the dot product) and roots in the
//!   simple root basis;
//! * simple indices are 1-based (`1..=rank`); index `0` is reserved for the
//!   affine simple reflection and is rejected by finite-type APIs.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

use crate::error::{input, Error, Result};

/// Integer coordinate vector. Ranks are at most 8, so it lives inline.
pub type Vector = SmallVec<[i64; 8]>;
/// Weight in the fundamental-weight basis.
pub type Weight = Vector;
/// Coweight (element of the coroot lattice) in the simple-coroot basis.
pub type Coweight = Vector;
/// Root in the simple-root basis.
pub type Root = Vector;

type Mat = SmallVec<[i64; 16]>;
/// Reduced word; entries are 1-based simple indices.
pub type Word = SmallVec<[u8; 16]>;

/// Default bound on the size of an explicitly enumerated finite Weyl group.
pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;

/// Dot product of a weight and a coweight.
#[inline]
pub fn pair(mu: &[i64], xi: &[i64]) -> i64 {
    debug_assert_eq!(mu.len(), xi.len());
    mu.iter().zip(xi).map(|(a, b)| a * b).sum()
}

/// Componentwise `a - b`.
pub fn sub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Componentwise `a + b`.
pub fn add(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Componentwise `k * a`.
pub fn scale(k: i64, a: &[i64]) -> Vector {
    a.iter().map(|x| k * x).collect()
}

/// The Cartan type letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn parse(s: &str) -> Result<Series> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            other => return input(format!("unknown Cartan series {other:?}")),
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A subset of the finite simple indices `1..=rank`, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSet(u32);

impl ParabolicSet {
    pub fn empty() -> Self {
        ParabolicSet(0)
    }

    pub fn full(rank: usize) -> Self {
        ParabolicSet(((1u32 << rank) - 1) << 1)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let mut s = ParabolicSet(0);
        for &i in indices {
            s.0 |= 1 << i;
        }
        s
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (1..32).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(&self, rank: usize) -> Self {
        ParabolicSet(Self::full(rank).0 & !self.0)
    }

    pub fn union(&self, other: &Self) -> Self {
        ParabolicSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        ParabolicSet(self.0 & other.0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// All subsets of `1..=rank`, in increasing bitmask order.
    pub fn all_subsets(rank: usize) -> Vec<ParabolicSet> {
        (0u32..(1 << rank)).map(|m| ParabolicSet(m << 1)).collect()
    }

    pub fn validate(&self, rank: usize) -> Result<()> {
        if self.is_subset(&Self::full(rank)) {
            Ok(())
        } else {
            input(format!("index set {:?} is not contained in 1..={rank}", self.indices()))
        }
    }
}

impl Serialize for ParabolicSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParabolicSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&i| i == 0 || i > 31) {
            return Err(serde::de::Error::custom("parabolic indices must lie in 1..=31"));
        }
        Ok(ParabolicSet::from_indices(&v))
    }
}

/// Element of the finite Weyl group, canonically represented by its integer
/// matrix on the coweight lattice. The inverse matrix and a reduced word are
/// cached alongside.
#[derive(Clone)]
pub struct FiniteWeylElement {
    rank: u8,
    matrix: Mat,
    inverse: Mat,
    word: Word,
}

impl PartialEq for FiniteWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}
impl Eq for FiniteWeylElement {}

impl Hash for FiniteWeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state)
    }
}

impl PartialOrd for FiniteWeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FiniteWeylElement {
    /// Shortlex on reduced words is not canonical, so order by length first
    /// and then by matrix.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.matrix).cmp(&(other.word.len(), &other.matrix))
    }
}

impl fmt::Debug for FiniteWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            let w: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
            write!(f, "{}", w.join(""))
        }
    }
}

impl FiniteWeylElement {
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    /// Matrix on coweights, row-major.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    /// Cached reduced word (1-based indices, leftmost factor first).
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// Exact data of a finite irreducible root system.
#[derive(Clone)]
pub struct CartanDatum {
    series: Series,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    positive_coroots: Vec<Coweight>,
    root_weights: Vec<Weight>,
    root_index: HashMap<Root, usize>,
    reflections: Vec<FiniteWeylElement>,
    simple: Vec<FiniteWeylElement>,
    theta: usize,
    w0: FiniteWeylElement,
    rho: Weight,
    two_rho_check: Coweight,
    weyl_bound: usize,
}

impl fmt::Debug for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

fn cartan_matrix(series: Series, n: usize) -> Result<Vec<Vec<i64>>> {
    let ok = match series {
        Series::A => n >= 1,
        Series::B | Series::C => n >= 2,
        Series::D => n >= 4,
        Series::E => (6..=8).contains(&n),
        Series::F => n == 4,
        Series::G => n == 2,
    };
    if !ok || n > 8 {
        return input(format!("{series}{n} is not a supported irreducible type"));
    }
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match series {
        Series::A | Series::B | Series::C | Series::F | Series::G => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Series::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    // Non-simply-laced bonds; entry (i, j) = <alpha_j, alpha_i^vee>.
    match series {
        Series::B => a[n - 1][n - 2] = -2, // alpha_n short
        Series::C => a[n - 2][n - 1] = -2, // alpha_n long
        Series::F => a[2][1] = -2,         // alpha_1, alpha_2 long
        Series::G => a[0][1] = -3,         // alpha_1 short
        _ => {}
    }
    Ok(a)
}

impl CartanDatum {
    /// Builds the root datum of type `series` and rank `rank`.
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(series, rank)?;
        let n = rank;
        let unit = |i: usize| -> Vector {
            let mut v: Vector = smallvec![0; n];
            v[i] = 1;
            v
        };
        // Positive roots and coroots by closure of the simple ones under the
        // simple reflections.
        let mut roots: Vec<Root> = Vec::new();
        let mut coroots: Vec<Coweight> = Vec::new();
        let mut index: HashMap<Root, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            index.insert(unit(i), roots.len());
            roots.push(unit(i));
            coroots.push(unit(i));
            queue.push_back(i);
        }
        while let Some(k) = queue.pop_front() {
            for i in 0..n {
                let (r, c) = (&roots[k], &coroots[k]);
                if *r == unit(i) {
                    continue;
                }
                let p: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                let q: i64 = (0..n).map(|j| cartan[j][i] * c[j]).sum();
                let mut r2 = r.clone();
                r2[i] -= p;
                let mut c2 = c.clone();
                c2[i] -= q;
                if !index.contains_key(&r2) {
                    debug_assert!(r2.iter().all(|&x| x >= 0));
                    index.insert(r2.clone(), roots.len());
                    roots.push(r2);
                    coroots.push(c2);
                    queue.push_back(roots.len() - 1);
                }
            }
        }
        // Sort by height, then lexicographically, for deterministic order.
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by_key(|&k| (roots[k].iter().sum::<i64>(), roots[k].clone()));
        let roots: Vec<Root> = order.iter().map(|&k| roots[k].clone()).collect();
        let coroots: Vec<Coweight> = order.iter().map(|&k| coroots[k].clone()).collect();
        let index: HashMap<Root, usize> = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        let root_weights: Vec<Weight> = roots
            .iter()
            .map(|r| (0..n).map(|i| (0..n).map(|j| cartan[i][j] * r[j]).sum()).collect())
            .collect();
        let mut two_rho_check: Coweight = smallvec![0; n];
        for c in &coroots {
            for i in 0..n {
                two_rho_check[i] += c[i];
            }
        }
        let theta = roots.len() - 1;
        let mut datum = CartanDatum {
            series,
            rank,
            cartan,
            positive_roots: roots,
            positive_coroots: coroots,
            root_weights,
            root_index: index,
            reflections: Vec::new(),
            simple: Vec::new(),
            theta,
            w0: FiniteWeylElement {
                rank: rank as u8,
                matrix: Mat::new(),
                inverse: Mat::new(),
                word: Word::new(),
            },
            rho: smallvec![1; n],
            two_rho_check,
            weyl_bound: DEFAULT_WEYL_BOUND,
        };
        datum.simple = (1..=n).map(|i| datum.simple_reflection_matrix(i)).collect();
        datum.reflections = (0..datum.positive_roots.len()).map(|k| datum.build_reflection(k)).collect();
        // Longest element: keep multiplying by right ascents.
        let mut w = datum.identity();
        'outer: loop {
            for i in 1..=n {
                if datum.is_right_ascent(&w, i) {
                    w = datum.mul(&w, &datum.simple[i - 1]);
                    continue 'outer;
                }
            }
            break;
        }
        datum.w0 = w;
        Ok(datum)
    }

    /// Same datum with a different bound for explicit group enumeration.
    pub fn with_weyl_bound(mut self, bound: usize) -> Self {
        self.weyl_bound = bound;
        self
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Coroot of the `k`-th positive root.
    pub fn positive_coroot(&self, k: usize) -> &Coweight {
        &self.positive_coroots[k]
    }

    pub fn positive_coroots(&self) -> &[Coweight] {
        &self.positive_coroots
    }

    /// The `k`-th positive root written in the fundamental-weight basis.
    pub fn positive_root_weight(&self, k: usize) -> &Weight {
        &self.root_weights[k]
    }

    /// Index of a positive root in [`Self::positive_roots`].
    pub fn positive_root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// Returns `(k, sign)` with `root = sign * positive_roots[k]`.
    pub fn root_index(&self, root: &[i64]) -> Option<(usize, i64)> {
        if let Some(k) = self.positive_root_index(root) {
            return Some((k, 1));
        }
        let neg: Vector = root.iter().map(|x| -x).collect();
        self.positive_root_index(&neg).map(|k| (k, -1))
    }

    pub fn is_root(&self, root: &[i64]) -> bool {
        self.root_index(root).is_some()
    }

    /// Coroot of an arbitrary (signed) root.
    pub fn coroot_of(&self, root: &[i64]) -> Option<Coweight> {
        self.root_index(root).map(|(k, s)| scale(s, &self.positive_coroots[k]))
    }

    pub fn theta(&self) -> &Root {
        &self.positive_roots[self.theta]
    }

    pub fn theta_index(&self) -> usize {
        self.theta
    }

    pub fn theta_check(&self) -> &Coweight {
        &self.positive_coroots[self.theta]
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `2 rho^vee`, the sum of the positive coroots (always integral).
    pub fn two_rho_check(&self) -> &Coweight {
        &self.two_rho_check
    }

    pub fn w0(&self) -> &FiniteWeylElement {
        &self.w0
    }

    /// Checked pairing of a weight with a coweight.
    pub fn pairing(&self, mu: &[i64], xi: &[i64]) -> Result<i64> {
        self.check_len(mu)?;
        self.check_len(xi)?;
        Ok(pair(mu, xi))
    }

    pub fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() == self.rank {
            Ok(())
        } else {
            input(format!("expected a vector of length {}, got {}", self.rank, v.len()))
        }
    }

    pub fn check_simple(&self, i: usize) -> Result<()> {
        if (1..=self.rank).contains(&i) {
            Ok(())
        } else {
            input(format!("simple index {i} outside 1..={}", self.rank))
        }
    }

    /// A root (simple-root basis) written in the fundamental-weight basis.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| self.cartan[i][j] * root[j]).sum()).collect()
    }

    /// `<alpha, xi>` for a root in the simple-root basis.
    pub fn root_pair(&self, root: &[i64], xi: &[i64]) -> i64 {
        let n = self.rank;
        (0..n)
            .map(|i| xi[i] * (0..n).map(|j| self.cartan[i][j] * root[j]).sum::<i64>())
            .sum()
    }

    /// Simple root `alpha_i` in the fundamental-weight basis (column `i` of A).
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        (0..self.rank).map(|k| self.cartan[k][i - 1]).collect()
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        lambda.iter().all(|&c| c >= 0)
    }

    /// `J = {i : <lambda, alpha_i^vee> = 0}`.
    pub fn stabilizer(&self, lambda: &[i64]) -> ParabolicSet {
        let idx: Vec<usize> = (1..=self.rank).filter(|&i| lambda[i - 1] == 0).collect();
        ParabolicSet::from_indices(&idx)
    }

    /// A dominant weight whose stabilizer is exactly `J`.
    pub fn weight_with_stabilizer(&self, j: ParabolicSet) -> Weight {
        (1..=self.rank).map(|i| if j.contains(i) { 0 } else { 1 }).collect()
    }

    /// `<alpha, xi>` where alpha is the `k`-th positive root.
    #[inline]
    pub fn positive_root_pair(&self, k: usize, xi: &[i64]) -> i64 {
        pair(&self.root_weights[k], xi)
    }

    // ---- Weyl group -------------------------------------------------------

    fn identity_matrix(&self) -> Mat {
        let n = self.rank;
        let mut m: Mat = smallvec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        m
    }

    fn mat_mul(&self, a: &[i64], b: &[i64]) -> Mat {
        let n = self.rank;
        let mut c: Mat = smallvec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x != 0 {
                    for j in 0..n {
                        c[i * n + j] += x * b[k * n + j];
                    }
                }
            }
        }
        c
    }

    fn simple_reflection_matrix(&self, i: usize) -> FiniteWeylElement {
        let n = self.rank;
        let mut m = self.identity_matrix();
        // (s_i xi)_k = xi_k - delta_{k,i} * sum_j A[j][i] xi_j
        for j in 0..n {
            m[(i - 1) * n + j] -= self.cartan[j][i - 1];
        }
        FiniteWeylElement {
            rank: n as u8,
            inverse: m.clone(),
            matrix: m,
            word: smallvec![i as u8],
        }
    }

    /// Builds an element from a coweight matrix and its inverse, computing a
    /// reduced word by peeling off right descents.
    fn element_from_matrices(&self, matrix: Mat, inverse: Mat) -> FiniteWeylElement {
        let n = self.rank;
        let id = self.identity_matrix();
        let mut m = matrix.clone();
        let mut rev: Word = Word::new();
        while m != id {
            // Column i of m is w(alpha_i^vee); negative iff i is a right descent.
            let i = (0..n)
                .find(|&i| (0..n).any(|r| m[r * n + i] < 0))
                .expect("non-identity Weyl element has a right descent");
            // m <- m * s_i : column k gets  m[., k] - m[., i] * A[k][i]
            for r in 0..n {
                let mi = m[r * n + i];
                if mi != 0 {
                    for k in 0..n {
                        m[r * n + k] -= mi * self.cartan[k][i];
                    }
                }
            }
            rev.push(i as u8 + 1);
        }
        rev.reverse();
        FiniteWeylElement {
            rank: n as u8,
            matrix,
            inverse,
            word: rev,
        }
    }

    pub fn identity(&self) -> FiniteWeylElement {
        let m = self.identity_matrix();
        FiniteWeylElement {
            rank: self.rank as u8,
            inverse: m.clone(),
            matrix: m,
            word: Word::new(),
        }
    }

    /// Simple reflection `s_i`, `i` in `1..=rank`.
    pub fn s(&self, i: usize) -> &FiniteWeylElement {
        &self.simple[i - 1]
    }

    /// Product of simple reflections `s_{w[0]} s_{w[1]} ...`.
    pub fn from_word(&self, word: &[usize]) -> Result<FiniteWeylElement> {
        let mut w = self.identity();
        for &i in word {
            self.check_simple(i)?;
            w = self.mul(&w, self.s(i));
        }
        Ok(w)
    }

    pub fn mul(&self, u: &FiniteWeylElement, v: &FiniteWeylElement) -> FiniteWeylElement {
        if u.is_identity() {
            return v.clone();
        }
        if v.is_identity() {
            return u.clone();
        }
        let m = self.mat_mul(&u.matrix, &v.matrix);
        let minv = self.mat_mul(&v.inverse, &u.inverse);
        self.element_from_matrices(m, minv)
    }

    pub fn inverse(&self, w: &FiniteWeylElement) -> FiniteWeylElement {
        let mut word = w.word.clone();
        word.reverse();
        FiniteWeylElement {
            rank: w.rank,
            matrix: w.inverse.clone(),
            inverse: w.matrix.clone(),
            word,
        }
    }

    /// Action on a coweight.
    pub fn act_coweight(&self, w: &FiniteWeylElement, xi: &[i64]) -> Coweight {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| w.matrix[i * n + j] * xi[j]).sum()).collect()
    }

    /// Action on a weight (contragredient to the coweight action).
    pub fn act_weight(&self, w: &FiniteWeylElement, mu: &[i64]) -> Weight {
        let n = self.rank;
        (0..n).map(|j| (0..n).map(|i| w.inverse[i * n + j] * mu[i]).sum()).collect()
    }

    /// Action on a root in the simple-root basis.
    pub fn act_root(&self, w: &FiniteWeylElement, root: &[i64]) -> Root {
        let n = self.rank;
        let mut c: Root = root.iter().copied().collect();
        for &i in w.word.iter().rev() {
            let i = i as usize - 1;
            let p: i64 = (0..n).map(|j| self.cartan[i][j] * c[j]).sum();
            c[i] -= p;
        }
        c
    }

    /// Sign (`+1`/`-1`) of `w alpha` for the `k`-th positive root.
    #[inline]
    pub fn sign_of_image(&self, w: &FiniteWeylElement, k: usize) -> i64 {
        let n = self.rank;
        let c = &self.positive_coroots[k];
        for i in 0..n {
            let v: i64 = (0..n).map(|j| w.matrix[i * n + j] * c[j]).sum();
            if v != 0 {
                return v.signum();
            }
        }
        unreachable!("Weyl group elements are invertible")
    }

    /// `ell(w s_i) > ell(w)`, i.e. `w alpha_i > 0`.
    pub fn is_right_ascent(&self, w: &FiniteWeylElement, i: usize) -> bool {
        let n = self.rank;
        (0..n).all(|r| w.matrix[r * n + (i - 1)] >= 0)
    }

    /// `ell(s_i w) > ell(w)`, i.e. `w^{-1} alpha_i > 0`.
    pub fn is_left_ascent(&self, w: &FiniteWeylElement, i: usize) -> bool {
        let n = self.rank;
        (0..n).all(|r| w.inverse[r * n + (i - 1)] >= 0)
    }

    /// Length and reduced word.
    pub fn length_and_word(&self, w: &FiniteWeylElement) -> (usize, Vec<usize>) {
        (w.length(), w.word.iter().map(|&i| i as usize).collect())
    }

    /// Number of inversions `#{alpha > 0 : w alpha < 0}`.
    pub fn inversion_count(&self, w: &FiniteWeylElement) -> usize {
        (0..self.positive_roots.len()).filter(|&k| self.sign_of_image(w, k) < 0).count()
    }

    fn build_reflection(&self, k: usize) -> FiniteWeylElement {
        // s_alpha xi = xi - <alpha, xi> alpha^vee
        let n = self.rank;
        let c = &self.positive_coroots[k];
        let a = &self.root_weights[k];
        let mut m = self.identity_matrix();
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] -= c[i] * a[j];
            }
        }
        self.element_from_matrices(m.clone(), m)
    }

    /// Reflection in the `k`-th positive root.
    pub fn reflection(&self, k: usize) -> &FiniteWeylElement {
        &self.reflections[k]
    }

    /// Every element of W exactly once, in breadth-first order from the
    /// identity (so by nondecreasing length).
    pub fn enumerate_weyl_group(&self) -> Result<Vec<FiniteWeylElement>> {
        let mut seen: HashSet<FiniteWeylElement> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        let e = self.identity();
        seen.insert(e.clone());
        queue.push_back(e);
        while let Some(w) = queue.pop_front() {
            for i in 1..=self.rank {
                if self.is_left_ascent(&w, i) {
                    let v = self.mul(self.s(i), &w);
                    if seen.insert(v.clone()) {
                        if seen.len() > self.weyl_bound {
                            return Err(Error::Budget(format!(
                                "Weyl group of {}{} exceeds the bound {}",
                                self.series, self.rank, self.weyl_bound
                            )));
                        }
                        queue.push_back(v);
                    }
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    // ---- parabolic data ---------------------------------------------------

    /// Positive roots supported on `J`, as indices into the positive roots.
    pub fn parabolic_positive_roots(&self, j: ParabolicSet) -> Vec<usize> {
        (0..self.positive_roots.len())
            .filter(|&k| {
                self.positive_roots[k]
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || j.contains(i + 1))
            })
            .collect()
    }

    /// Connected components of the Dynkin subdiagram on `J`.
    pub fn components(&self, j: ParabolicSet) -> Vec<ParabolicSet> {
        let mut left = j.indices();
        let mut out = Vec::new();
        while let Some(start) = left.pop() {
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                let nbrs: Vec<usize> =
                    left.iter().copied().filter(|&b| self.cartan[a - 1][b - 1] != 0).collect();
                for b in nbrs {
                    left.retain(|&x| x != b);
                    comp.push(b);
                    stack.push(b);
                }
            }
            out.push(ParabolicSet::from_indices(&comp));
        }
        out.sort();
        out
    }

    /// Highest root of each connected component of `J` (positive-root indices).
    pub fn component_highest_roots(&self, j: ParabolicSet) -> Vec<usize> {
        self.components(j)
            .into_iter()
            .map(|c| *self.parabolic_positive_roots(c).last().expect("nonempty component"))
            .collect()
    }

    /// Whether `w` is the minimal-length representative of `w W_J`.
    pub fn is_min_coset_rep(&self, w: &FiniteWeylElement, j: ParabolicSet) -> bool {
        j.indices().into_iter().all(|i| self.is_right_ascent(w, i))
    }

    /// Minimal-length representative of `w W_J`.
    pub fn min_coset_rep(&self, w: &FiniteWeylElement, j: ParabolicSet) -> FiniteWeylElement {
        let mut w = w.clone();
        'outer: loop {
            for i in j.indices() {
                if !self.is_right_ascent(&w, i) {
                    w = self.mul(&w, self.s(i));
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Longest element of the parabolic subgroup `W_J`.
    pub fn longest_of(&self, j: ParabolicSet) -> FiniteWeylElement {
        let mut w = self.identity();
        'outer: loop {
            for i in j.indices() {
                if self.is_right_ascent(&w, i) {
                    w = self.mul(&w, self.s(i));
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Elements of `W_J`.
    pub fn parabolic_subgroup(&self, j: ParabolicSet) -> Vec<FiniteWeylElement> {
        let mut seen: HashSet<FiniteWeylElement> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        seen.insert(self.identity());
        queue.push_back(self.identity());
        while let Some(w) = queue.pop_front() {
            for i in j.indices() {
                let v = self.mul(&w, self.s(i));
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
            out.push(w);
        }
        out
    }

    /// `-w0 lambda`.
    pub fn dual_weight(&self, lambda: &[i64]) -> Weight {
        self.act_weight(&self.w0, lambda).iter().map(|x| -x).collect()
    }

    /// Dimension of the irreducible module of highest weight `lambda`, by the
    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> u128 {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for c in &self.positive_coroots {
            let a: i64 = c.iter().zip(lambda).map(|(x, l)| x * (l + 1)).sum();
            let b: i64 = c.iter().sum();
            num *= a as u128;
            den *= b as u128;
            let g = num_integer::gcd(num, den);
            num /= g;
            den /= g;
        }
        debug_assert_eq!(den, 1);
        num / den
    }
}
