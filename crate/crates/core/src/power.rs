//! Power solutions `(Xⁿ, r⁽ⁿ⁾)` built from a base solution `(X, r)`.
//!
//! Tuples `x̄ = (x_1, ..., x_n)` are identified with indices through
//! [`TupleCodec`], `x_1` being the most significant digit. The σ-map of the
//! power solution at `x̄` is `f_x̄(ȳ) = (h_1, ..., h_n)` with
//!
//! ```text
//! h_1 = σ_{x_1}⋯σ_{x_n}(y_1)
//! h_j = σ⁻¹_{h_{j-1}}⋯σ⁻¹_{h_1} σ_{x_1}⋯σ_{x_n} σ_{y_1}⋯σ_{y_{j-1}}(y_j)
//! ```
//!
//! and coincides with `ψ(σ_{x_1}⋯σ_{x_n})` for the embedding
//! `ψ: Sym_X → Sym_{Xⁿ}` computed by [`psi_apply`].

use std::fmt;

use num_integer::gcd;

use crate::error::{Error, Result};
use crate::perm::{close_group, groups_isomorphic, GeneratedGroup, Isomorphism, Perm};
use crate::solution::{derive_gamma, permutation_group, Solution};
use crate::Limits;

/// Default bound on `mⁿ`, the size of a power solution.
pub const DEFAULT_POWER_CAP: usize = 4096;

/// Lexicographic identification of `{0..m}ⁿ` with `{0..mⁿ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleCodec {
    m: usize,
    n: usize,
    size: usize,
}

impl TupleCodec {
    pub fn new(m: usize, n: usize, cap: usize) -> Result<TupleCodec> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyDomain);
        }
        let size = u32::try_from(n)
            .ok()
            .and_then(|n| m.checked_pow(n))
            .filter(|&size| size <= cap)
            .ok_or(Error::SizeCap {
                what: "tuple space",
                cap,
            })?;
        Ok(TupleCodec { m, n, size })
    }

    pub fn base(&self) -> usize {
        self.m
    }

    /// Tuple length `n`.
    pub fn arity(&self) -> usize {
        self.n
    }

    /// `mⁿ`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn encode(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: tuple.len(),
            });
        }
        tuple.iter().try_fold(0, |acc, &x| {
            if x >= self.m {
                return Err(Error::IndexOutOfRange { index: x, bound: self.m });
            }
            Ok(acc * self.m + x)
        })
    }

    /// Panics if `code >= size()`.
    pub fn decode(&self, code: usize) -> Vec<usize> {
        assert!(code < self.size, "code {code} out of range for {} tuples", self.size);
        let mut tuple = vec![0; self.n];
        let mut rest = code;
        for slot in tuple.iter_mut().rev() {
            *slot = rest % self.m;
            rest /= self.m;
        }
        tuple
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size).map(|code| self.decode(code))
    }
}

fn check_table(sigma: &[Perm], tau: Option<&Perm>, tuples: &[&[usize]]) -> Result<usize> {
    let m = sigma.len();
    if m == 0 {
        return Err(Error::EmptyDomain);
    }
    if let Some(bad) = sigma.iter().chain(tau).find(|p| p.degree() != m) {
        return Err(Error::DegreeMismatch {
            expected: m,
            found: bad.degree(),
        });
    }
    for &index in tuples.iter().flat_map(|t| t.iter()) {
        if index >= m {
            return Err(Error::IndexOutOfRange { index, bound: m });
        }
    }
    Ok(m)
}

fn inverses(sigma: &[Perm]) -> Vec<Perm> {
    sigma.iter().map(Perm::inverse).collect()
}

// t_1 = τ(y_1), t_{j+1} = σ(t_j)⁻¹⋯σ(t_1)⁻¹ τ σ(y_1)⋯σ(y_j)(y_{j+1})
fn t_recursion(sigma: &[Perm], sigma_inv: &[Perm], tau: &Perm, ybar: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = Vec::with_capacity(ybar.len());
    for j in 0..ybar.len() {
        let mut v = ybar[j];
        for &y in ybar[..j].iter().rev() {
            v = sigma[y].apply(v);
        }
        v = tau.apply(v);
        for &prev in &t {
            v = sigma_inv[prev].apply(v);
        }
        t.push(v);
    }
    t
}

/// `ψ(τ)(ȳ)` for the σ-map given by `sigma_table`.
pub fn psi_apply(sigma_table: &[Perm], tau: &Perm, ybar: &[usize]) -> Result<Vec<usize>> {
    check_table(sigma_table, Some(tau), &[ybar])?;
    Ok(t_recursion(sigma_table, &inverses(sigma_table), tau, ybar))
}

/// `ψ(τ)⁻¹(ȳ)`, evaluated by the same recursion driven by `τ⁻¹`.
pub fn psi_inverse_apply(sigma_table: &[Perm], tau: &Perm, ybar: &[usize]) -> Result<Vec<usize>> {
    check_table(sigma_table, Some(tau), &[ybar])?;
    Ok(t_recursion(sigma_table, &inverses(sigma_table), &tau.inverse(), ybar))
}

/// `ψ(τ)` as a permutation of degree `mⁿ` under [`TupleCodec`].
pub fn psi_perm(sigma_table: &[Perm], tau: &Perm, n: usize, cap: usize) -> Result<Perm> {
    let m = check_table(sigma_table, Some(tau), &[])?;
    let codec = TupleCodec::new(m, n, cap)?;
    let sigma_inv = inverses(sigma_table);
    let images = codec
        .tuples()
        .map(|y| codec.encode(&t_recursion(sigma_table, &sigma_inv, tau, &y)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Perm::from_images_unchecked(images))
}

// σ_{x_1}⋯σ_{x_n}(v), σ_{x_n} acting first
fn apply_word(sigma: &[Perm], word: &[usize], v: usize) -> usize {
    word.iter().rev().fold(v, |v, &x| sigma[x].apply(v))
}

fn h_recursion(sigma: &[Perm], sigma_inv: &[Perm], xbar: &[usize], ybar: &[usize]) -> Vec<usize> {
    let mut h: Vec<usize> = Vec::with_capacity(ybar.len());
    for j in 0..ybar.len() {
        let v = apply_word(sigma, &ybar[..j], ybar[j]);
        let mut v = apply_word(sigma, xbar, v);
        for &prev in &h {
            v = sigma_inv[prev].apply(v);
        }
        h.push(v);
    }
    h
}

/// `(h_1(x̄, ȳ), ..., h_n(x̄, ȳ))` for an arbitrary σ-table.
pub fn h_components(sigma_table: &[Perm], xbar: &[usize], ybar: &[usize]) -> Result<Vec<usize>> {
    check_table(sigma_table, None, &[xbar, ybar])?;
    if xbar.len() != ybar.len() {
        return Err(Error::DegreeMismatch {
            expected: xbar.len(),
            found: ybar.len(),
        });
    }
    Ok(h_recursion(sigma_table, &inverses(sigma_table), xbar, ybar))
}

/// `f_x̄` as a permutation of `Xⁿ`, `n = xbar.len()`, evaluated pointwise
/// through the `h_j` recursion.
pub fn f_map(s: &Solution, xbar: &[usize], cap: usize) -> Result<Perm> {
    let sigma = s.sigmas();
    check_table(sigma, None, &[xbar])?;
    if xbar.len() < 2 {
        return Err(Error::InvalidExponent(xbar.len()));
    }
    let codec = TupleCodec::new(s.size(), xbar.len(), cap)?;
    Ok(f_perm(sigma, &inverses(sigma), &codec, xbar))
}

fn f_perm(sigma: &[Perm], sigma_inv: &[Perm], codec: &TupleCodec, xbar: &[usize]) -> Perm {
    let images = codec
        .tuples()
        .map(|y| {
            let h = h_recursion(sigma, sigma_inv, xbar, &y);
            codec.encode(&h).expect("h components lie in X")
        })
        .collect();
    Perm::from_images_unchecked(images)
}

/// `(f_{(x1,x2)}(y1, y2))` from the closed two-factor formula
/// `(σ_{x1}σ_{x2}(y1), σ⁻¹_{σ_{x1}σ_{x2}(y1)} σ_{x1}σ_{x2}σ_{y1}(y2))`.
pub fn power_solution_n2_direct(
    s: &Solution,
    x1: usize,
    x2: usize,
    y1: usize,
    y2: usize,
) -> Result<(usize, usize)> {
    let m = s.size();
    if let Some(&index) = [x1, x2, y1, y2].iter().find(|&&i| i >= m) {
        return Err(Error::IndexOutOfRange { index, bound: m });
    }
    let prod = s.sigma(x1).then_unchecked(s.sigma(x2));
    let first = prod.apply(y1);
    let second = s.sigma(first).inverse().apply(prod.apply(s.sigma(y1).apply(y2)));
    Ok((first, second))
}

/// The solution `(Xⁿ, r⁽ⁿ⁾)` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct PowerSolution {
    pub base: Solution,
    pub n: usize,
    pub codec: TupleCodec,
    pub result: Solution,
}

/// Builds `(Xⁿ, r⁽ⁿ⁾)`, verifies every axiom and checks the derived γ
/// against `ȳ ↦ f⁻¹_{f_x̄(ȳ)}(x̄)` computed through `ψ⁻¹`.
pub fn power_solution(s: &Solution, n: usize, cap: usize) -> Result<PowerSolution> {
    if n < 2 {
        return Err(Error::InvalidExponent(n));
    }
    let codec = TupleCodec::new(s.size(), n, cap)?;
    let sigma = s.sigmas();
    let sigma_inv = inverses(sigma);
    let f_table: Vec<Perm> = codec.tuples().map(|x| f_perm(sigma, &sigma_inv, &codec, &x)).collect();

    let gamma = derive_gamma(&f_table);
    let result = Solution::from_sigma(f_table)?;

    // f⁻¹_z̄ = ψ(σ_{z_1}⋯σ_{z_n})⁻¹
    let products: Vec<Perm> = codec.tuples().map(|z| s.sigma_product(&z)).collect::<Result<_>>()?;
    for (y, row) in gamma.iter().enumerate() {
        let ybar = codec.decode(y);
        for (x, &derived) in row.iter().enumerate() {
            let xbar = codec.decode(x);
            let z = result.sigma(x).apply(y);
            let expected = t_recursion(sigma, &sigma_inv, &products[z].inverse(), &xbar);
            if codec.encode(&expected)? != derived {
                return Err(Error::Inconsistent(format!(
                    "γ at x̄={xbar:?}, ȳ={ybar:?}: derived {:?}, via ψ⁻¹ {expected:?}",
                    codec.decode(derived)
                )));
            }
        }
    }

    Ok(PowerSolution {
        base: s.clone(),
        n,
        codec,
        result,
    })
}

/// Permutation groups attached to a power solution.
#[derive(Clone, Debug)]
pub struct PowerGroups {
    /// Permutation group of `(Xⁿ, r⁽ⁿ⁾)`, of degree `mⁿ`.
    pub power_group: GeneratedGroup,
    /// `⟨σ_{x_1}⋯σ_{x_n} : x̄ ∈ Xⁿ⟩ ≤ Sym_X`.
    pub product_group: GeneratedGroup,
    /// An isomorphism from `power_group` to `product_group`, if one exists.
    pub isomorphism: Option<Isomorphism>,
}

pub fn power_groups(p: &PowerSolution, group_cap: usize) -> Result<PowerGroups> {
    let power_group = permutation_group(&p.result, group_cap)?;
    let mut gens: Vec<Perm> = Vec::new();
    for word in p.codec.tuples() {
        let product = p.base.sigma_product(&word)?;
        if !gens.contains(&product) {
            gens.push(product);
        }
    }
    let product_group = close_group(&gens, group_cap)?;
    let isomorphism = groups_isomorphic(&power_group, &product_group, group_cap)?;
    Ok(PowerGroups {
        power_group,
        product_group,
        isomorphism,
    })
}

pub fn power_perm_group(s: &Solution, n: usize, limits: &Limits) -> Result<PowerGroups> {
    let p = power_solution(s, n, limits.power_cap)?;
    power_groups(&p, limits.group_cap)
}

/// Sufficient conditions under which the power solution keeps the
/// permutation group of the base solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoCondition {
    /// Some `σ_z` is the identity.
    FixedPointPresent,
    /// `gcd(|𝒢(X, r)|, n) = 1`.
    CoprimeOrder,
    NoGuarantee,
}

impl fmt::Display for IsoCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoCondition::FixedPointPresent => "FixedPointPresent",
            IsoCondition::CoprimeOrder => "CoprimeOrder",
            IsoCondition::NoGuarantee => "NoGuarantee",
        })
    }
}

pub fn iso_condition(s: &Solution, n: usize, group_cap: usize) -> Result<IsoCondition> {
    if s.fixed_point().is_some() {
        return Ok(IsoCondition::FixedPointPresent);
    }
    let order = permutation_group(s, group_cap)?.order();
    Ok(if gcd(order, n) == 1 {
        IsoCondition::CoprimeOrder
    } else {
        IsoCondition::NoGuarantee
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{symmetric_group, DEFAULT_GROUP_CAP};
    use crate::solution::adjoin_fixed_point;

    const CAP: usize = DEFAULT_POWER_CAP;

    fn p(images: &[usize]) -> Perm {
        Perm::new(images.to_vec()).unwrap()
    }

    fn swap2() -> Solution {
        Solution::from_sigma(vec![p(&[1, 0]), p(&[1, 0])]).unwrap()
    }

    fn adjoined3() -> Solution {
        adjoin_fixed_point(&swap2())
    }

    #[test]
    fn codec_layout() {
        let c = TupleCodec::new(3, 2, CAP).unwrap();
        assert_eq!(c.size(), 9);
        assert_eq!(c.encode(&[0, 2]).unwrap(), 2);
        assert_eq!(c.encode(&[2, 0]).unwrap(), 6);
        assert_eq!(c.decode(5), vec![1, 2]);
        assert!(matches!(c.encode(&[3, 0]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(TupleCodec::new(8, 5, CAP), Err(Error::SizeCap { .. })));
        assert!(matches!(TupleCodec::new(2, 200, usize::MAX), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn psi_with_trivial_sigma_is_diagonal() {
        let ids = vec![Perm::identity(3).unwrap(); 3];
        let tau = p(&[2, 0, 1]);
        assert_eq!(psi_apply(&ids, &tau, &[0, 1, 2]).unwrap(), vec![2, 0, 1]);
        assert_eq!(psi_inverse_apply(&ids, &tau, &[2, 0, 1]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn psi_of_identity_is_identity() {
        let s = adjoined3();
        let id = Perm::identity(3).unwrap();
        for y in TupleCodec::new(3, 3, CAP).unwrap().tuples() {
            assert_eq!(psi_apply(s.sigmas(), &id, &y).unwrap(), y);
            assert_eq!(psi_inverse_apply(s.sigmas(), &id, &y).unwrap(), y);
        }
        assert!(psi_perm(s.sigmas(), &id, 2, CAP).unwrap().is_identity());
    }

    #[test]
    fn psi_hand_evaluated() {
        // t1 = τ(0) = 1, t2 = σ_1⁻¹ τ σ_0 (0) = 1
        let s = swap2();
        let tau = p(&[1, 0]);
        assert_eq!(psi_apply(s.sigmas(), &tau, &[0, 0]).unwrap(), vec![1, 1]);
        assert_eq!(psi_inverse_apply(s.sigmas(), &tau, &[1, 1]).unwrap(), vec![0, 0]);
        for y in TupleCodec::new(2, 2, CAP).unwrap().tuples() {
            let image = psi_apply(s.sigmas(), &tau, &y).unwrap();
            assert_eq!(psi_inverse_apply(s.sigmas(), &tau, &image).unwrap(), y);
        }
    }

    #[test]
    fn psi_input_errors() {
        let s = swap2();
        assert!(matches!(
            psi_apply(s.sigmas(), &p(&[1, 0]), &[0, 2]),
            Err(Error::IndexOutOfRange { index: 2, bound: 2 })
        ));
        assert!(matches!(
            psi_apply(s.sigmas(), &p(&[1, 0, 2]), &[0, 1]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn psi_homomorphism_on_swap_group() {
        let s = swap2();
        let group = permutation_group(&s, DEFAULT_GROUP_CAP).unwrap();
        for tau in group.elements() {
            for xi in group.elements() {
                let lhs = psi_perm(s.sigmas(), &tau.compose(xi).unwrap(), 2, CAP).unwrap();
                let rhs = psi_perm(s.sigmas(), tau, 2, CAP)
                    .unwrap()
                    .compose(&psi_perm(s.sigmas(), xi, 2, CAP).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn psi_is_injective() {
        for s in [swap2(), adjoined3()] {
            for n in [2, 3] {
                let images: Vec<Perm> = symmetric_group(s.size())
                    .iter()
                    .map(|tau| psi_perm(s.sigmas(), tau, n, CAP).unwrap())
                    .collect();
                for i in 0..images.len() {
                    for j in 0..i {
                        assert_ne!(images[i], images[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn f_map_examples() {
        let t = Solution::trivial(3).unwrap();
        for x in TupleCodec::new(3, 2, CAP).unwrap().tuples() {
            assert!(f_map(&t, &x, CAP).unwrap().is_identity());
        }
        for x in TupleCodec::new(2, 2, CAP).unwrap().tuples() {
            assert!(f_map(&swap2(), &x, CAP).unwrap().is_identity());
        }
        let s = adjoined3();
        let f = f_map(&s, &[0, 2], CAP).unwrap();
        assert_eq!(f.degree(), 9);
        assert_eq!(f, psi_perm(s.sigmas(), &p(&[1, 0, 2]), 2, CAP).unwrap());
        assert!(!f.is_identity());
        assert_eq!(f_map(&s, &[0], CAP), Err(Error::InvalidExponent(1)));
    }

    #[test]
    fn power_solution_examples() {
        for m in 1..=3 {
            for n in 2..=3 {
                let ps = power_solution(&Solution::trivial(m).unwrap(), n, CAP).unwrap();
                assert_eq!(ps.result, Solution::trivial(m.pow(n as u32)).unwrap());
            }
        }
        let ps = power_solution(&swap2(), 2, CAP).unwrap();
        assert_eq!(ps.result, Solution::trivial(4).unwrap());

        let ps = power_solution(&adjoined3(), 2, CAP).unwrap();
        assert_eq!(ps.result.size(), 9);
        assert!(ps.result.verify().all_pass());
        assert_eq!(permutation_group(&ps.result, DEFAULT_GROUP_CAP).unwrap().order(), 2);

        assert_eq!(power_solution(&swap2(), 1, CAP).unwrap_err(), Error::InvalidExponent(1));
        assert!(matches!(power_solution(&swap2(), 13, CAP), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn two_factor_formula_examples() {
        let t = Solution::trivial(2).unwrap();
        let s = swap2();
        for x1 in 0..2 {
            for x2 in 0..2 {
                for y1 in 0..2 {
                    for y2 in 0..2 {
                        assert_eq!(power_solution_n2_direct(&t, x1, x2, y1, y2).unwrap(), (y1, y2));
                        assert_eq!(power_solution_n2_direct(&s, x1, x2, y1, y2).unwrap(), (y1, y2));
                    }
                }
            }
        }
        let s = adjoined3();
        let codec = TupleCodec::new(3, 2, CAP).unwrap();
        for x in codec.tuples() {
            let f = f_map(&s, &x, CAP).unwrap();
            for y in codec.tuples() {
                let (a, b) = power_solution_n2_direct(&s, x[0], x[1], y[0], y[1]).unwrap();
                assert_eq!(codec.decode(f.apply(codec.encode(&y).unwrap())), vec![a, b]);
            }
        }
        assert!(matches!(
            power_solution_n2_direct(&s, 0, 0, 0, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn power_group_examples() {
        let limits = Limits::default();
        let g = power_perm_group(&swap2(), 2, &limits).unwrap();
        assert_eq!((g.power_group.order(), g.product_group.order()), (1, 1));
        assert!(g.isomorphism.is_some());

        let g = power_perm_group(&swap2(), 3, &limits).unwrap();
        assert_eq!((g.power_group.order(), g.product_group.order()), (2, 2));
        assert!(g.isomorphism.is_some());

        let g = power_perm_group(&adjoined3(), 2, &limits).unwrap();
        assert_eq!((g.power_group.order(), g.product_group.order()), (2, 2));
        assert!(g.product_group.contains(&p(&[1, 0, 2])));
        let iso = g.isomorphism.unwrap();
        assert!(iso.is_valid(&g.power_group, &g.product_group));
    }

    #[test]
    fn iso_condition_examples() {
        for n in 2..=5 {
            assert_eq!(
                iso_condition(&adjoined3(), n, DEFAULT_GROUP_CAP).unwrap(),
                IsoCondition::FixedPointPresent
            );
        }
        assert_eq!(iso_condition(&swap2(), 3, DEFAULT_GROUP_CAP).unwrap(), IsoCondition::CoprimeOrder);
        assert_eq!(iso_condition(&swap2(), 2, DEFAULT_GROUP_CAP).unwrap(), IsoCondition::NoGuarantee);
        let g = power_perm_group(&swap2(), 2, &Limits::default()).unwrap();
        let base = permutation_group(&swap2(), DEFAULT_GROUP_CAP).unwrap();
        assert_ne!(g.power_group.order(), base.order());
    }
}
