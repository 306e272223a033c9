use std::collections::{HashMap, HashSet, VecDeque};

use crate::liealg::Root;

/// A Weyl group element of type B or D acting on ε-coordinates, stored as a
/// signed permutation: `img[j] = ±(i + 1)` when ε_j ↦ ±ε_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    img: Vec<i32>,
}

impl SignedPerm {
    pub fn identity(l: usize) -> Self {
        SignedPerm {
            img: (1..=l as i32).collect(),
        }
    }

    /// From a row-major l×l integer matrix; `None` unless it is a signed permutation matrix.
    pub fn from_matrix(l: usize, m: &[i64]) -> Option<Self> {
        if m.len() != l * l {
            return None;
        }
        let mut img = Vec::with_capacity(l);
        for j in 0..l {
            let nonzero: Vec<usize> = (0..l).filter(|&i| m[i * l + j] != 0).collect();
            match nonzero.as_slice() {
                [i] if m[i * l + j].abs() == 1 => img.push(m[i * l + j] as i32 * (*i as i32 + 1)),
                _ => return None,
            }
        }
        let mut seen = vec![false; l];
        for v in &img {
            let i = v.unsigned_abs() as usize - 1;
            if std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(SignedPerm { img })
    }

    /// s_α(v) = v − 2(α, v)/(α, α)·α.
    pub fn reflection(alpha: &Root) -> Self {
        let l = alpha.rank();
        let norm = alpha.norm_sqr();
        let m: Vec<i64> = (0..l * l)
            .map(|idx| {
                let (i, j) = (idx / l, idx % l);
                i64::from(i == j) - 2 * alpha.coords[i] * alpha.coords[j] / norm
            })
            .collect();
        SignedPerm::from_matrix(l, &m).expect("root reflections of B and D are signed permutations")
    }

    pub fn rank(&self) -> usize {
        self.img.len()
    }

    /// Matrix entry (i, j).
    pub fn get(&self, i: usize, j: usize) -> i64 {
        let v = self.img[j];
        if v.unsigned_abs() as usize == i + 1 {
            i64::from(v.signum())
        } else {
            0
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm {
            img: other
                .img
                .iter()
                .map(|&v| v.signum() * self.img[v.unsigned_abs() as usize - 1])
                .collect(),
        }
    }

    /// The inverse, which for a signed permutation matrix is its transpose.
    pub fn transpose(&self) -> SignedPerm {
        let mut img = vec![0; self.img.len()];
        for (j, &v) in self.img.iter().enumerate() {
            img[v.unsigned_abs() as usize - 1] = v.signum() * (j as i32 + 1);
        }
        SignedPerm { img }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (j, &s) in self.img.iter().enumerate() {
            out[s.unsigned_abs() as usize - 1] += i64::from(s.signum()) * v[j];
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(j, &v)| v == j as i32 + 1)
    }
}

/// The subgroup generated by `gens`, by breadth-first closure.
pub fn closure(l: usize, gens: &[SignedPerm]) -> HashSet<SignedPerm> {
    let id = SignedPerm::identity(l);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let next = w.compose(g);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Every element of W with a reduced word in the simple reflections
/// (indices into `simple`), in order of increasing length.
pub fn elements_with_words(simple: &[Root]) -> Vec<(SignedPerm, Vec<usize>)> {
    let l = simple.first().map_or(0, Root::rank);
    let gens: Vec<SignedPerm> = simple.iter().map(SignedPerm::reflection).collect();
    let id = SignedPerm::identity(l);
    let mut words: HashMap<SignedPerm, Vec<usize>> = HashMap::from([(id.clone(), Vec::new())]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let word = words[&w].clone();
        for (a, g) in gens.iter().enumerate() {
            let next = w.compose(g);
            if !words.contains_key(&next) {
                let mut nw = word.clone();
                nw.push(a);
                words.insert(next.clone(), nw);
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    order
        .into_iter()
        .map(|w| {
            let word = words.remove(&w).expect("recorded");
            (w, word)
        })
        .collect()
}

/// Result of the coset computation W^θ / W_K.
#[derive(Clone, Debug)]
pub struct CosetData {
    pub weyl_order: usize,
    pub fixed_order: usize,
    pub k_order: usize,
    /// Minimal-length coset representatives, as words in the simple reflections.
    pub representatives: Vec<Vec<usize>>,
}

impl CosetData {
    pub fn index(&self) -> usize {
        self.representatives.len()
    }
}

/// Cosets of W_K in W^θ. `theta` is the action of θ on ε-coordinates and
/// `k_gens` generate W_K.
pub fn fixed_cosets(simple: &[Root], theta: &SignedPerm, k_gens: &[SignedPerm]) -> CosetData {
    let l = theta.rank();
    let all = elements_with_words(simple);
    let wk = closure(l, k_gens);
    let mut covered: HashSet<SignedPerm> = HashSet::new();
    let mut representatives = Vec::new();
    let mut fixed_order = 0;
    for (w, word) in &all {
        if theta.compose(w).compose(theta) != *w {
            continue;
        }
        fixed_order += 1;
        if covered.contains(w) {
            continue;
        }
        for k in &wk {
            covered.insert(w.compose(k));
        }
        representatives.push(word.clone());
    }
    CosetData {
        weyl_order: all.len(),
        fixed_order,
        k_order: wk.len(),
        representatives,
    }
}
