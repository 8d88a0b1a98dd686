//! Cyclic quiver data: framings, multipartition fixed points, box characters
//! and sparse graded operator matrices on the fixed-point basis.

use crate::exactalg::{ExactScalar, Mono, Var};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The cyclic quiver with `n` nodes, a framing dimension vector and the
/// colors of the framing parameters `u_1..u_{|w|}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSetup {
    pub n: usize,
    pub w: Vec<usize>,
    /// color in `Z/n` of each framing index
    pub framing_colors: Vec<usize>,
    /// global offset of the framing parameters: framing index `j` uses
    /// variable `u_{offset+j}`; nonzero for the second factor of tensor setups
    pub u_offset: usize,
}

impl QuiverSetup {
    /// Framing colors default to the node assignment read off `w`.
    pub fn new(n: usize, w: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config("need at least two nodes".into()));
        }
        if w.len() != n {
            return Err(Error::Config("framing vector length must equal n".into()));
        }
        let mut framing_colors = Vec::new();
        for (node, &count) in w.iter().enumerate() {
            for _ in 0..count {
                framing_colors.push(node);
            }
        }
        Ok(QuiverSetup {
            n,
            w,
            framing_colors,
            u_offset: 0,
        })
    }

    pub fn with_colors(n: usize, w: Vec<usize>, framing_colors: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config("need at least two nodes".into()));
        }
        if w.len() != n {
            return Err(Error::Config("framing vector length must equal n".into()));
        }
        if framing_colors.len() != w.iter().sum::<usize>() {
            return Err(Error::Config(
                "framing color count must equal |w|".into(),
            ));
        }
        for node in 0..n {
            let cnt = framing_colors.iter().filter(|&&c| c == node).count();
            if cnt != w[node] {
                return Err(Error::Config(format!(
                    "framing colors disagree with w at node {}",
                    node
                )));
            }
        }
        Ok(QuiverSetup {
            n,
            w,
            framing_colors,
            u_offset: 0,
        })
    }

    pub fn framings(&self) -> usize {
        self.framing_colors.len()
    }

    /// The equivariant parameter of framing index `j`.
    pub fn u_var(&self, j: usize) -> Var {
        Var::U((self.u_offset + j) as u16)
    }

    /// Affine Cartan matrix entry `C[i][j]` of the cycle quiver.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        let n = self.n;
        let mut c = if i == j { 2 } else { 0 };
        if (i + 1) % n == j {
            c -= 1;
        }
        if (j + 1) % n == i {
            c -= 1;
        }
        c
    }

    /// `C v` as a vector of integers.
    pub fn cartan_apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.cartan(i, j) * v[j]).sum())
            .collect()
    }

    /// The symmetric pairing `a^T C b`.
    pub fn cartan_pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let cb = self.cartan_apply(b);
        a.iter().zip(cb).map(|(x, y)| x * y).sum()
    }

    /// `dim M(v, w) = 2 v·w - v^T C v`.
    pub fn variety_dim(&self, v: &[i64]) -> i64 {
        let vw: i64 = v
            .iter()
            .zip(&self.w)
            .map(|(a, b)| a * (*b as i64))
            .sum();
        2 * vw - self.cartan_pair(v, v)
    }
}

/// A box of a partition in framing component `framing`, at row `x` and
/// column `y` (both 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoxPos {
    pub x: usize,
    pub y: usize,
    pub framing: usize,
}

impl BoxPos {
    /// Equivariant character `u_i q^(x+y+1) t^(x-y)`.
    pub fn character(&self, setup: &QuiverSetup) -> Mono {
        Mono::from_pairs([
            (setup.u_var(self.framing), 2),
            (Var::Q, 2 * (self.x as i64 + self.y as i64 + 1)),
            (Var::T, 2 * (self.x as i64 - self.y as i64)),
        ])
    }

    /// Color `(x - y + s_i) mod n` where `s_i` is the framing color.
    pub fn color(&self, setup: &QuiverSetup) -> usize {
        let s = setup.framing_colors[self.framing] as i64;
        let c = (self.x as i64 - self.y as i64 + s).rem_euclid(setup.n as i64);
        c as usize
    }

    /// Content `x - y`, before any chamber shift.
    pub fn content(&self) -> i64 {
        self.x as i64 - self.y as i64
    }
}

/// A tuple of partitions, one per framing index. Partitions are stored as
/// weakly decreasing row lengths without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiPartition(pub Vec<Vec<usize>>);

impl MultiPartition {
    pub fn empty(framings: usize) -> Self {
        MultiPartition(vec![Vec::new(); framings])
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|p| p.is_empty())
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|p| p.iter().sum::<usize>()).sum()
    }

    pub fn boxes(&self) -> Vec<BoxPos> {
        let mut out = Vec::new();
        for (framing, part) in self.0.iter().enumerate() {
            for (x, &len) in part.iter().enumerate() {
                for y in 0..len {
                    out.push(BoxPos { x, y, framing });
                }
            }
        }
        out
    }

    /// Box count per color: the K-theory grading.
    pub fn dim_vector(&self, setup: &QuiverSetup) -> Vec<i64> {
        let mut v = vec![0i64; setup.n];
        for b in self.boxes() {
            v[b.color(setup)] += 1;
        }
        v
    }

    /// Whether `self` contains `other` componentwise (as Young diagrams).
    pub fn contains(&self, other: &MultiPartition) -> bool {
        if self.0.len() != other.0.len() {
            return false;
        }
        self.0.iter().zip(&other.0).all(|(a, b)| {
            b.iter()
                .enumerate()
                .all(|(i, &len)| a.get(i).map(|&l| l >= len).unwrap_or(false))
        })
    }

    /// Boxes of `self` not in `other` (valid when `other ⊆ self`).
    pub fn skew_boxes(&self, other: &MultiPartition) -> Vec<BoxPos> {
        let mut out = Vec::new();
        for (framing, part) in self.0.iter().enumerate() {
            for (x, &len) in part.iter().enumerate() {
                let start = other.0[framing].get(x).cloned().unwrap_or(0);
                for y in start..len {
                    out.push(BoxPos { x, y, framing });
                }
            }
        }
        out
    }

    /// Sum of contents per color, shifted by the chamber exponents `N_i` on
    /// the framing components: returns (per-color integer content sum,
    /// per-color per-framing box counts for the `N_i` parts).
    pub fn color_content(&self, setup: &QuiverSetup) -> ColorContent {
        let mut plain = vec![0i64; setup.n];
        let mut framed = vec![vec![0i64; setup.framings()]; setup.n];
        for b in self.boxes() {
            let c = b.color(setup);
            plain[c] += b.content();
            framed[c][b.framing] += 1;
        }
        ColorContent { plain, framed }
    }
}

/// Per-color content data: the integer part and the formal `N_i` multiples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorContent {
    /// per color: sum of `x - y`
    pub plain: Vec<i64>,
    /// per color, per framing index: number of boxes (multiplies `N_i`)
    pub framed: Vec<Vec<i64>>,
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.0).unwrap())
    }
}

fn partitions_of(total: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if total == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=max.min(total)).rev() {
            prefix.push(first);
            rec(total - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

/// All multipartitions whose color-counted box content equals `v`, in the
/// canonical order (lexicographic on the concatenated row-length lists).
pub fn enumerate_fixed_points(setup: &QuiverSetup, v: &[i64]) -> Vec<MultiPartition> {
    let total: i64 = v.iter().sum();
    if v.iter().any(|&x| x < 0) || total < 0 {
        return Vec::new();
    }
    let total = total as usize;
    let k = setup.framings();
    // distribute `total` boxes over framing components, take partitions of
    // each share, filter by color content
    let mut out = Vec::new();
    fn distribute(
        rest: usize,
        comp: usize,
        k: usize,
        acc: &mut Vec<usize>,
        shares: &mut Vec<Vec<usize>>,
    ) {
        if comp == k {
            if rest == 0 {
                shares.push(acc.clone());
            }
            return;
        }
        for take in 0..=rest {
            acc.push(take);
            distribute(rest - take, comp + 1, k, acc, shares);
            acc.pop();
        }
    }
    let mut shares = Vec::new();
    distribute(total, 0, k, &mut Vec::new(), &mut shares);
    for share in shares {
        // cartesian product of partitions of each share
        let choices: Vec<Vec<Vec<usize>>> = share.iter().map(|&s| partitions_of(s)).collect();
        let mut idx = vec![0usize; k];
        loop {
            let mp = MultiPartition(
                (0..k)
                    .map(|i| choices[i][idx[i]].clone())
                    .collect::<Vec<_>>(),
            );
            if mp.dim_vector(setup) == v {
                out.push(mp);
            }
            // advance multi-index
            let mut c = 0;
            loop {
                if c == k {
                    break;
                }
                idx[c] += 1;
                if idx[c] < choices[c].len() {
                    break;
                }
                idx[c] = 0;
                c += 1;
            }
            if c == k {
                break;
            }
        }
    }
    out.sort();
    out
}

/// A sparse matrix on fixed-point bases, graded by dimension vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorMatrix {
    pub v_in: Vec<i64>,
    pub v_out: Vec<i64>,
    pub rows: Vec<MultiPartition>,
    pub cols: Vec<MultiPartition>,
    /// (row index, col index) -> entry
    pub entries: std::collections::BTreeMap<(usize, usize), ExactScalar>,
}

impl OperatorMatrix {
    pub fn zero(setup: &QuiverSetup, v_in: Vec<i64>, v_out: Vec<i64>) -> Self {
        OperatorMatrix {
            rows: enumerate_fixed_points(setup, &v_out),
            cols: enumerate_fixed_points(setup, &v_in),
            v_in,
            v_out,
        entries: Default::default(),
        }
    }

    pub fn identity(setup: &QuiverSetup, v: Vec<i64>) -> Self {
        let mut m = Self::zero(setup, v.clone(), v);
        for i in 0..m.cols.len() {
            m.entries.insert((i, i), ExactScalar::one());
        }
        m
    }

    pub fn diagonal(setup: &QuiverSetup, v: Vec<i64>, eig: impl Fn(&MultiPartition) -> ExactScalar) -> Self {
        let mut m = Self::zero(setup, v.clone(), v);
        for i in 0..m.cols.len() {
            let e = eig(&m.cols[i]);
            if !e.is_zero() {
                m.entries.insert((i, i), e);
            }
        }
        m
    }

    pub fn set(&mut self, row: usize, col: usize, value: ExactScalar) {
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> ExactScalar {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self ∘ rhs`; gradings must chain.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.v_in != rhs.v_out {
            return Err(Error::GradingMismatch(format!(
                "compose: {:?} vs {:?}",
                self.v_in, rhs.v_out
            )));
        }
        let mut out = OperatorMatrix {
            v_in: rhs.v_in.clone(),
            v_out: self.v_out.clone(),
            rows: self.rows.clone(),
            cols: rhs.cols.clone(),
            entries: Default::default(),
        };
        for (&(r, k), a) in &self.entries {
            for (&(k2, c), b) in &rhs.entries {
                if k != k2 {
                    continue;
                }
                let prev = out.get(r, c);
                out.set(r, c, &prev + &(a * b));
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.v_in != rhs.v_in || self.v_out != rhs.v_out {
            return Err(Error::GradingMismatch("add".into()));
        }
        let mut out = self.clone();
        for (&(r, c), b) in &rhs.entries {
            let prev = out.get(r, c);
            out.set(r, c, &prev + b);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.v_in != rhs.v_in || self.v_out != rhs.v_out {
            return Err(Error::GradingMismatch("sub".into()));
        }
        let mut out = self.clone();
        for (&(r, c), b) in &rhs.entries {
            let prev = out.get(r, c);
            out.set(r, c, &prev - b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> OperatorMatrix {
        let mut out = self.clone();
        if c.is_zero() {
            out.entries.clear();
            return out;
        }
        for v in out.entries.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn to_dense(&self) -> crate::exactalg::linalg::DenseMatrix {
        let mut m =
            crate::exactalg::linalg::DenseMatrix::zeros(self.rows.len(), self.cols.len());
        for (&(r, c), v) in &self.entries {
            *m.at_mut(r, c) = v.clone();
        }
        m
    }
}

/// Ordered tensor-product basis of two fixed-point bases, grouped by blocks
/// `(v1, v2)` of fixed total.
pub fn tensor_basis(
    setup1: &QuiverSetup,
    v1: &[i64],
    setup2: &QuiverSetup,
    v2: &[i64],
) -> Vec<(MultiPartition, MultiPartition)> {
    let b1 = enumerate_fixed_points(setup1, v1);
    let b2 = enumerate_fixed_points(setup2, v2);
    let mut out = Vec::with_capacity(b1.len() * b2.len());
    for a in &b1 {
        for b in &b2 {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// All splittings `v1 + v2 = v` with componentwise nonnegative parts, in a
/// deterministic order (lexicographic in `v1`).
pub fn tensor_blocks(v: &[i64]) -> Vec<(Vec<i64>, Vec<i64>)> {
    let n = v.len();
    let mut out = Vec::new();
    let mut v1 = vec![0i64; n];
    loop {
        let v2: Vec<i64> = v.iter().zip(&v1).map(|(a, b)| a - b).collect();
        out.push((v1.clone(), v2));
        // advance v1 within the box [0, v]
        let mut c = n;
        loop {
            if c == 0 {
                return out;
            }
            c -= 1;
            if v1[c] < v[c] {
                v1[c] += 1;
                for x in v1.iter_mut().skip(c + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn setup2() -> QuiverSetup {
        QuiverSetup::new(2, vec![1, 0]).unwrap()
    }

    #[test]
    fn box_characters() {
        let s = setup2();
        let b = BoxPos {
            x: 0,
            y: 0,
            framing: 0,
        };
        assert_eq!(
            b.character(&s),
            Mono::from_pairs([(Var::U(0), 2), (Var::Q, 2)])
        );
        let b10 = BoxPos {
            x: 1,
            y: 0,
            framing: 0,
        };
        assert_eq!(
            b10.character(&s),
            Mono::from_pairs([(Var::U(0), 2), (Var::Q, 4), (Var::T, 2)])
        );
        let b01 = BoxPos {
            x: 0,
            y: 1,
            framing: 0,
        };
        assert_eq!(
            b01.character(&s),
            Mono::from_pairs([(Var::U(0), 2), (Var::Q, 4), (Var::T, -2)])
        );
    }

    #[test]
    fn fixed_points_small() {
        let s = setup2();
        // v = (1,0): single box of color 0
        let fps = enumerate_fixed_points(&s, &[1, 0]);
        assert_eq!(fps, vec![MultiPartition(vec![vec![1]])]);
        // v = 0: empty multipartition
        let fps = enumerate_fixed_points(&s, &[0, 0]);
        assert_eq!(fps, vec![MultiPartition(vec![vec![]])]);
        // v = (1,1): the two two-box partitions (2) and (1,1)
        let fps = enumerate_fixed_points(&s, &[1, 1]);
        assert_eq!(
            fps,
            vec![
                MultiPartition(vec![vec![1, 1]]),
                MultiPartition(vec![vec![2]]),
            ]
        );
        // v = (0,1): no fixed point (first box has color 0)
        assert!(enumerate_fixed_points(&s, &[0, 1]).is_empty());
    }

    #[test]
    fn fixed_point_count_matches_brute_force() {
        // n=2, w=(1,1): count multipartitions of each v by brute force
        let s = QuiverSetup::new(2, vec![1, 1]).unwrap();
        for total in 0..=4usize {
            let mut count_by_v: std::collections::BTreeMap<Vec<i64>, usize> = Default::default();
            // brute force: all pairs of partitions with total size `total`
            for s1 in 0..=total {
                for p1 in super::partitions_of(s1) {
                    for p2 in super::partitions_of(total - s1) {
                        let mp = MultiPartition(vec![p1.clone(), p2.clone()]);
                        *count_by_v.entry(mp.dim_vector(&s)).or_insert(0) += 1;
                    }
                }
            }
            for (v, count) in count_by_v {
                assert_eq!(
                    enumerate_fixed_points(&s, &v).len(),
                    count,
                    "v = {:?}",
                    v
                );
            }
        }
    }

    #[test]
    fn characters_distinct_within_multipartition() {
        let s = QuiverSetup::new(3, vec![2, 0, 0]).unwrap();
        for v in [[2, 1, 0], [1, 1, 1], [2, 2, 1]] {
            for mp in enumerate_fixed_points(&s, &v.map(|x| x as i64)) {
                let chars: Vec<Mono> = mp.boxes().iter().map(|b| b.character(&s)).collect();
                for i in 0..chars.len() {
                    for j in 0..i {
                        assert_ne!(chars[i], chars[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_affine_a1() {
        let s = setup2();
        assert_eq!(s.cartan(0, 0), 2);
        assert_eq!(s.cartan(0, 1), -2);
        assert_eq!(s.cartan_pair(&[1, 0], &[1, 0]), 2);
        assert_eq!(s.cartan_pair(&[1, 1], &[1, 1]), 0);
        assert_eq!(s.variety_dim(&[1, 0]), 0);
        assert_eq!(s.variety_dim(&[1, 1]), 2);
    }

    #[test]
    fn tensor_block_shapes() {
        let blocks = tensor_blocks(&[1, 0]);
        assert_eq!(
            blocks,
            vec![
                (vec![0, 0], vec![1, 0]),
                (vec![1, 0], vec![0, 0]),
            ]
        );
        let s = setup2();
        let pairs = tensor_basis(&s, &[0, 0], &s, &[0, 0]);
        assert_eq!(pairs.len(), 1);
        let _ = int(0);
    }

    #[test]
    fn compose_respects_grading() {
        let s = setup2();
        let id = OperatorMatrix::identity(&s, vec![1, 0]);
        assert!(id.compose(&id).is_ok());
        let id2 = OperatorMatrix::identity(&s, vec![1, 1]);
        assert!(id.compose(&id2).is_err());
    }
}
