//! Brute-force reference implementations for integration tests. Plain
//! vectors only; nothing here calls into the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// `r[x][y] = r(x, y)`.
pub type Table = Vec<Vec<(usize, usize)>>;

pub type SigmaGamma = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// All permutations of `0..m` as image lists.
pub fn all_perms(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(m - 1) {
        for pos in 0..m {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `(p ∘ q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

pub fn identity(m: usize) -> Vec<usize> {
    (0..m).collect()
}

pub fn is_bijective(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter().all(|&i| i < v.len() && !std::mem::replace(&mut seen[i], true))
}

pub fn r_table(sigma: &[Vec<usize>], gamma: &[Vec<usize>]) -> Table {
    let m = sigma.len();
    (0..m).map(|x| (0..m).map(|y| (sigma[x][y], gamma[y][x])).collect()).collect()
}

pub fn is_involutive(r: &Table) -> bool {
    let m = r.len();
    (0..m).all(|x| (0..m).all(|y| {
        let (a, b) = r[x][y];
        r[a][b] == (x, y)
    }))
}

/// `r12 r23 r12 = r23 r12 r23` on every triple.
pub fn is_braided(r: &Table) -> bool {
    let m = r.len();
    let r12 = |(a, b, c): (usize, usize, usize)| {
        let (p, q) = r[a][b];
        (p, q, c)
    };
    let r23 = |(a, b, c): (usize, usize, usize)| {
        let (p, q) = r[b][c];
        (a, p, q)
    };
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                let t = (x, y, z);
                if r12(r23(r12(t))) != r23(r12(r23(t))) {
                    return false;
                }
            }
        }
    }
    true
}

/// The maps `y ↦ first(r(x, y))` and `x ↦ second(r(x, y))`.
pub fn components(r: &Table) -> SigmaGamma {
    let m = r.len();
    let sigma = (0..m).map(|x| (0..m).map(|y| r[x][y].0).collect()).collect();
    let gamma = (0..m).map(|y| (0..m).map(|x| r[x][y].1).collect()).collect();
    (sigma, gamma)
}

pub fn is_solution(r: &Table) -> bool {
    let (sigma, gamma) = components(r);
    is_involutive(r)
        && is_braided(r)
        && sigma.iter().all(|p| is_bijective(p))
        && gamma.iter().all(|p| is_bijective(p))
}

/// Every `(σ, γ) ∈ Sym_m^m × Sym_m^m` whose map `r` is an involutive braided
/// bijection, scanned independently. Returns `(σ, γ)` pairs sorted by σ.
pub fn scan_solutions(m: usize) -> Vec<SigmaGamma> {
    let perms = all_perms(m);
    let tables = tuples_of(&perms, m);
    let mut out = Vec::new();
    for sigma in &tables {
        for gamma in &tables {
            let r = r_table(sigma, gamma);
            if is_involutive(&r) && is_braided(&r) {
                out.push((sigma.clone(), gamma.clone()));
            }
        }
    }
    out.sort();
    out
}

fn tuples_of(items: &[Vec<usize>], len: usize) -> Vec<Vec<Vec<usize>>> {
    let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for _ in 0..len {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect();
    }
    acc
}

/// σ-tables of every solution with `1 ≤ m ≤ max_m` points.
pub fn corpus(max_m: usize) -> Vec<Vec<Vec<usize>>> {
    (1..=max_m).flat_map(|m| scan_solutions(m).into_iter().map(|(s, _)| s)).collect()
}

/// Relabel by `π`: `σ'_{π(x)} = π σ_x π⁻¹`.
pub fn relabel(sigma: &[Vec<usize>], pi: &[usize]) -> Vec<Vec<usize>> {
    let inv = invert(pi);
    let mut out = vec![vec![]; sigma.len()];
    for (x, s) in sigma.iter().enumerate() {
        out[pi[x]] = compose(pi, &compose(s, &inv));
    }
    out
}

/// Lexicographically least relabeling of a σ-table.
pub fn canonical_form(sigma: &[Vec<usize>]) -> Vec<Vec<usize>> {
    all_perms(sigma.len())
        .iter()
        .map(|pi| relabel(sigma, pi))
        .min()
        .expect("at least one relabeling")
}

pub fn count_classes(tables: &[Vec<Vec<usize>>]) -> usize {
    tables.iter().map(|s| canonical_form(s)).collect::<BTreeSet<_>>().len()
}

/// Closure under composition: multiply all pairs until nothing new appears.
pub fn closure(gens: &[Vec<usize>], m: usize) -> BTreeSet<Vec<usize>> {
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    set.insert(identity(m));
    set.extend(gens.iter().cloned());
    loop {
        let elems: Vec<_> = set.iter().cloned().collect();
        let before = set.len();
        for a in &elems {
            for b in &elems {
                set.insert(compose(a, b));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

pub fn perm_order(p: &[usize]) -> usize {
    let id = identity(p.len());
    let mut q = p.to_vec();
    let mut k = 1;
    while q != id {
        q = compose(p, &q);
        k += 1;
    }
    k
}

/// Tuple `x̄ ∈ Xⁿ` to its index, `x1` most significant.
pub fn encode(m: usize, xs: &[usize]) -> usize {
    xs.iter().fold(0, |acc, &x| acc * m + x)
}

pub fn decode(m: usize, n: usize, mut code: usize) -> Vec<usize> {
    let mut xs = vec![0; n];
    for slot in xs.iter_mut().rev() {
        *slot = code % m;
        code /= m;
    }
    xs
}

/// `σ_{w1} ∘ ⋯ ∘ σ_{wk}`.
pub fn word(sigma: &[Vec<usize>], w: &[usize]) -> Vec<usize> {
    w.iter().fold(identity(sigma.len()), |acc, &x| compose(&acc, &sigma[x]))
}

/// `f_x̄(ȳ)` by the `h_j` recursion.
pub fn f_apply(sigma: &[Vec<usize>], xbar: &[usize], ybar: &[usize]) -> Vec<usize> {
    let prod_x = word(sigma, xbar);
    let mut h: Vec<usize> = Vec::new();
    for j in 0..ybar.len() {
        let mut p = compose(&prod_x, &word(sigma, &ybar[..j]));
        for &hk in &h {
            p = compose(&invert(&sigma[hk]), &p);
        }
        h.push(p[ybar[j]]);
    }
    h
}

/// `r⁽ⁿ⁾(x̄, ȳ) = (f_x̄(ȳ), f⁻¹_{f_x̄(ȳ)}(x̄))` as a table on `mⁿ` points.
pub fn power_table(sigma: &[Vec<usize>], n: usize) -> Table {
    let m = sigma.len();
    let size = m.pow(n as u32);
    let f: Vec<Vec<usize>> = (0..size)
        .map(|x| {
            let xbar = decode(m, n, x);
            (0..size).map(|y| encode(m, &f_apply(sigma, &xbar, &decode(m, n, y)))).collect()
        })
        .collect();
    (0..size)
        .map(|x| {
            (0..size)
                .map(|y| {
                    let u = f[x][y];
                    let v = f[u].iter().position(|&w| w == x).expect("f_u is bijective");
                    (u, v)
                })
                .collect()
        })
        .collect()
}
