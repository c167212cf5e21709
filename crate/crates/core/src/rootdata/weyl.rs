use std::collections::{HashMap, HashSet};

use crate::linalg::IntMatrix;

use super::{RootDataError, RootDatum};

/// An element of a (parabolic sub)group of `W`, stored with the
/// lexicographically smallest of its shortest words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub mat_x: IntMatrix,
    pub mat_y: IntMatrix,
}

impl WeylElement {
    pub fn identity(rank_x: usize) -> Self {
        WeylElement {
            word: Vec::new(),
            mat_x: IntMatrix::identity(rank_x),
            mat_y: IntMatrix::identity(rank_x),
        }
    }

    /// Element given by an arbitrary word (not necessarily reduced).
    pub fn from_word(datum: &RootDatum, word: &[usize]) -> Self {
        let mut w = Self::identity(datum.rank_x());
        for &i in word {
            w.mat_x = w.mat_x.mul(&datum.reflection_x(i));
            w.mat_y = w.mat_y.mul(&datum.reflection_y(i));
        }
        w.word = word.to_vec();
        w
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply_x(&self, lambda: &[i64]) -> Vec<i64> {
        self.mat_x.apply(lambda)
    }

    pub fn apply_y(&self, mu: &[i64]) -> Vec<i64> {
        self.mat_y.apply(mu)
    }

    pub fn is_involution(&self) -> bool {
        self.mat_x.mul(&self.mat_x).is_identity()
    }
}

fn check_subset(datum: &RootDatum, subset: &[usize], bound: usize) -> Result<Vec<usize>, RootDataError> {
    let mut s = subset.to_vec();
    s.sort();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&i| i >= datum.rank()) {
        return Err(RootDataError::UnknownNode(bad as i64));
    }
    if s.len() > bound {
        return Err(RootDataError::RankBound { rank: s.len(), bound });
    }
    Ok(s)
}

/// All elements of `W_subset`, breadth first; within a length, ordered by
/// their (lexicographically least shortest) word.
pub fn weyl_enumerate(datum: &RootDatum, subset: &[usize], bound: usize) -> Result<Vec<WeylElement>, RootDataError> {
    let s = check_subset(datum, subset, bound)?;
    let refl: Vec<(IntMatrix, IntMatrix)> = s.iter().map(|&i| (datum.reflection_x(i), datum.reflection_y(i))).collect();
    let mut seen: HashMap<IntMatrix, usize> = HashMap::new();
    let id = WeylElement::identity(datum.rank_x());
    seen.insert(id.mat_x.clone(), 0);
    let mut all = vec![id];
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &k in &layer {
            for (pos, &i) in s.iter().enumerate() {
                let w = &all[k];
                let mx = w.mat_x.mul(&refl[pos].0);
                if seen.contains_key(&mx) {
                    continue;
                }
                let mut word = w.word.clone();
                word.push(i);
                let e = WeylElement {
                    word,
                    mat_y: w.mat_y.mul(&refl[pos].1),
                    mat_x: mx.clone(),
                };
                seen.insert(mx, all.len());
                next.push(all.len());
                all.push(e);
            }
        }
        layer = next;
    }
    Ok(all)
}

/// The unique longest element of `W_subset`.
pub fn longest_element(datum: &RootDatum, subset: &[usize], bound: usize) -> Result<WeylElement, RootDataError> {
    let all = weyl_enumerate(datum, subset, bound)?;
    Ok(all.into_iter().last().expect("identity is always present"))
}

/// Every reduced word of `w` in `W_subset`, in lexicographic order.
pub fn reduced_words(datum: &RootDatum, subset: &[usize], w: &WeylElement, bound: usize) -> Result<Vec<Vec<usize>>, RootDataError> {
    let s = check_subset(datum, subset, bound)?;
    let length: HashMap<IntMatrix, usize> = weyl_enumerate(datum, &s, bound)?
        .into_iter()
        .map(|e| (e.mat_x, e.word.len()))
        .collect();
    let mut memo: HashMap<IntMatrix, Vec<Vec<usize>>> = HashMap::new();
    fn go(
        datum: &RootDatum,
        s: &[usize],
        m: &IntMatrix,
        length: &HashMap<IntMatrix, usize>,
        memo: &mut HashMap<IntMatrix, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(v) = memo.get(m) {
            return v.clone();
        }
        let l = length[m];
        let mut out = Vec::new();
        if l == 0 {
            out.push(Vec::new());
        }
        for &i in s {
            let shorter = m.mul(&datum.reflection_x(i));
            if length.get(&shorter).is_some_and(|&k| k + 1 == l) {
                for mut word in go(datum, s, &shorter, length, memo) {
                    word.push(i);
                    out.push(word);
                }
            }
        }
        out.sort();
        memo.insert(m.clone(), out.clone());
        out
    }
    if !length.contains_key(&w.mat_x) {
        return Err(RootDataError::Shape("element is not in the parabolic subgroup".into()));
    }
    Ok(go(datum, &s, &w.mat_x, &length, &mut memo))
}

/// A positive root of a sub-root system, in simple-root coordinates, with
/// its coroot in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveRoot {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

/// Positive roots of the sub-root system generated by `subset`, sorted by
/// height and then coordinates.
pub fn positive_roots(datum: &RootDatum, subset: &[usize], bound: usize) -> Result<Vec<PositiveRoot>, RootDataError> {
    let s = check_subset(datum, subset, bound)?;
    let n = datum.rank();
    let c = datum.cartan().cartan_matrix();
    let mut seen: HashSet<(Vec<i64>, Vec<i64>)> = HashSet::new();
    let mut stack: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for &i in &s {
        let e = super::unit(n, i);
        if seen.insert((e.clone(), e.clone())) {
            stack.push((e.clone(), e));
        }
    }
    while let Some((b, g)) = stack.pop() {
        for &i in &s {
            // <alpha_i^vee, beta> and <gamma, alpha_i>
            let cb: i64 = (0..n).map(|k| c[(i, k)] * b[k]).sum();
            let cg: i64 = (0..n).map(|k| g[k] * c[(k, i)]).sum();
            let mut b2 = b.clone();
            b2[i] -= cb;
            let mut g2 = g.clone();
            g2[i] -= cg;
            if seen.insert((b2.clone(), g2.clone())) {
                stack.push((b2, g2));
            }
        }
    }
    let mut out: Vec<PositiveRoot> = seen
        .into_iter()
        .filter(|(b, _)| b.iter().all(|&x| x >= 0))
        .map(|(root, coroot)| PositiveRoot { root, coroot })
        .collect();
    out.sort_by(|a, b| {
        let ha: i64 = a.root.iter().sum();
        let hb: i64 = b.root.iter().sum();
        ha.cmp(&hb).then_with(|| a.root.cmp(&b.root))
    });
    Ok(out)
}

/// `2 rho^vee` of the subset: the sum of its positive coroots, as a vector in `Y`.
pub fn two_rho_coroot(datum: &RootDatum, subset: &[usize], bound: usize) -> Result<Vec<i64>, RootDataError> {
    let roots = positive_roots(datum, subset, bound)?;
    let mut out = vec![0; datum.rank_x()];
    for r in &roots {
        for (k, &g) in r.coroot.iter().enumerate() {
            for (o, y) in out.iter_mut().zip(datum.coroot(k)) {
                *o += g * y;
            }
        }
    }
    Ok(out)
}

/// Order `m_ij` of `s_i s_j`, read off from `c_ij c_ji`.
pub fn braid_order(datum: &RootDatum, i: usize, j: usize) -> usize {
    if i == j {
        return 1;
    }
    match datum.cartan().c(i, j) * datum.cartan().c(j, i) {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        other => panic!("c_ij c_ji = {other} is not of finite type"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{CartanDatum, DEFAULT_RANK_BOUND};

    fn sc(kind: char, n: usize) -> RootDatum {
        RootDatum::simply_connected(CartanDatum::of_type(kind, n))
    }

    #[test]
    fn reduced_words_of_longest_elements() {
        let a2 = sc('A', 2);
        let w = longest_element(&a2, &[0, 1], DEFAULT_RANK_BOUND).unwrap();
        assert_eq!(
            reduced_words(&a2, &[0, 1], &w, DEFAULT_RANK_BOUND).unwrap(),
            vec![vec![0, 1, 0], vec![1, 0, 1]]
        );
        let b2 = sc('B', 2);
        let w = longest_element(&b2, &[0, 1], DEFAULT_RANK_BOUND).unwrap();
        assert_eq!(reduced_words(&b2, &[0, 1], &w, DEFAULT_RANK_BOUND).unwrap().len(), 2);
        let a3 = sc('A', 3);
        let w = longest_element(&a3, &[0, 1, 2], DEFAULT_RANK_BOUND).unwrap();
        assert_eq!(reduced_words(&a3, &[0, 1, 2], &w, DEFAULT_RANK_BOUND).unwrap().len(), 16);
    }

    #[test]
    fn a2_longest_element() {
        let d = sc('A', 2);
        let w = longest_element(&d, &[0, 1], DEFAULT_RANK_BOUND).unwrap();
        assert_eq!(w.word, vec![0, 1, 0]);
        let a2 = d.root(1).iter().map(|x| -x).collect::<Vec<_>>();
        assert_eq!(w.apply_x(d.root(0)), a2);
    }

    #[test]
    fn empty_subset_gives_identity() {
        let d = sc('B', 2);
        let w = longest_element(&d, &[], DEFAULT_RANK_BOUND).unwrap();
        assert_eq!(w.length(), 0);
        assert!(w.mat_x.is_identity());
        assert_eq!(two_rho_coroot(&d, &[], DEFAULT_RANK_BOUND).unwrap(), vec![0, 0]);
    }

    #[test]
    fn two_rho_of_a2() {
        let d = sc('A', 2);
        assert_eq!(two_rho_coroot(&d, &[0, 1], DEFAULT_RANK_BOUND).unwrap(), vec![2, 2]);
        assert_eq!(two_rho_coroot(&d, &[0], DEFAULT_RANK_BOUND).unwrap(), vec![1, 0]);
    }

    #[test]
    fn rank_bound_refuses() {
        let d = sc('A', 5);
        assert_eq!(
            weyl_enumerate(&d, &[0, 1, 2, 3, 4], DEFAULT_RANK_BOUND).unwrap_err(),
            RootDataError::RankBound { rank: 5, bound: 4 }
        );
        assert!(weyl_enumerate(&d, &[0, 1], DEFAULT_RANK_BOUND).is_ok());
    }

    #[test]
    fn words_are_reduced_and_lex_least() {
        let d = sc('B', 2);
        let all = weyl_enumerate(&d, &[0, 1], DEFAULT_RANK_BOUND).unwrap();
        for w in &all {
            assert_eq!(WeylElement::from_word(&d, &w.word).mat_x, w.mat_x);
        }
        assert_eq!(all.last().unwrap().word, vec![0, 1, 0, 1]);
    }
}
