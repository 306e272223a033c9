use crate::exactfield::{ExactMatrix, ExactPoly, Mat, Ring};

/// Coefficients of det(λI − A), highest degree first (`[1, c_1, …, c_n]`),
/// by Berkowitz's division-free recurrence.
pub fn berkowitz<R: Ring>(a: &Mat<R>) -> Vec<R> {
    let n = a.rows();
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    if n == 0 {
        return vec![R::one()];
    }
    let mut v = vec![R::one(), a.get(0, 0).negated()];
    for r in 1..n {
        let mut t = vec![R::one(), a.get(r, r).negated()];
        let mut w: Vec<R> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for k in 0..r {
            let dot = (0..r).fold(R::zero(), |acc, j| acc.plus(&a.get(r, j).times(&w[j])));
            t.push(dot.negated());
            if k + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).fold(R::zero(), |acc, j| acc.plus(&a.get(i, j).times(&w[j]))))
                    .collect();
            }
        }
        let next: Vec<R> = (0..r + 2)
            .map(|i| (0..=i.min(r)).fold(R::zero(), |acc, j| acc.plus(&t[i - j].times(&v[j]))))
            .collect();
        v = next;
    }
    v
}

/// det(λI − x) as a polynomial in λ.
pub fn char_poly(x: &ExactMatrix) -> ExactPoly {
    let mut c = berkowitz(x);
    c.reverse();
    ExactPoly::new(c)
}

/// Pfaffian of an antisymmetric matrix of even size, by expansion along the
/// first remaining row with memoisation over subsets.
pub fn pfaffian_antisymmetric<R: Ring>(b: &Mat<R>) -> R {
    let n = b.rows();
    assert!(b.is_square() && n <= 20, "Pfaffian size");
    if n % 2 == 1 {
        return R::zero();
    }
    let full: u32 = (1u32 << n) - 1;
    let mut memo: Vec<Option<R>> = vec![None; 1usize << n];
    pf_rec(b, full, &mut memo)
}

fn pf_rec<R: Ring>(b: &Mat<R>, mask: u32, memo: &mut [Option<R>]) -> R {
    if mask == 0 {
        return R::one();
    }
    if let Some(v) = &memo[mask as usize] {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut acc = R::zero();
    let mut pos = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = b.get(i, j);
        if !a.is_zero() {
            let sub = pf_rec(b, rest & !(1 << j), memo);
            let term = a.times(&sub);
            acc = if pos % 2 == 0 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        pos += 1;
    }
    memo[mask as usize] = Some(acc.clone());
    acc
}

/// Pf(S·x) for x ∈ so(2k) in the anti-diagonal realisation.
pub fn pfaffian_so<R: Ring>(x: &Mat<R>) -> R {
    let n = x.rows();
    // (S·x)_{ij} = x_{n−1−i, j}
    let sx = Mat::from_fn(n, n, |i, j| x.get(n - 1 - i, j).clone());
    pfaffian_antisymmetric(&sx)
}
