//! Hyperbolic forms, Witt equivalence at bounded rank, and cancellation checks.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{InvolutiveAlgebra, MatrixOverA};
use crate::budget::Budget;
use crate::coded::{CodedMatrix, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::forms::{
    classify_isometry_classes, is_epsilon_hermitian, is_isometric_bruteforce, is_unimodular, orthogonal_sum,
    FormFilter, ModuleMap, SesquilinearSystem, Sign,
};
use crate::matrix::Matrix;
use crate::ring::InvolutiveRing;
use crate::search;

/// Data `(A^m, A^n, (F_i, G_i))` of a hyperbolic sesquilinear form; arrows are `n x m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicSpec {
    pub algebra: Arc<InvolutiveAlgebra>,
    pub m: usize,
    pub n: usize,
    pub arrows: Vec<(MatrixOverA, MatrixOverA)>,
}

impl HyperbolicSpec {
    pub fn new(
        algebra: Arc<InvolutiveAlgebra>,
        m: usize,
        n: usize,
        arrows: Vec<(MatrixOverA, MatrixOverA)>,
    ) -> Result<Self> {
        if arrows.is_empty() {
            return Err(Error::DimensionMismatch("a spec needs at least one arrow pair".into()));
        }
        for (f, g) in &arrows {
            for x in [f, g] {
                if x.rows() != n || x.cols() != m {
                    return Err(Error::DimensionMismatch(format!(
                        "arrow is {}x{}, expected {n}x{m}",
                        x.rows(),
                        x.cols()
                    )));
                }
                algebra.check_matrix(x)?;
            }
        }
        Ok(HyperbolicSpec { algebra, m, n, arrows })
    }

    /// Single arrow pair.
    pub fn pair(algebra: Arc<InvolutiveAlgebra>, f: MatrixOverA, g: MatrixOverA) -> Result<Self> {
        let (n, m) = (f.rows(), f.cols());
        Self::new(algebra, m, n, vec![(f, g)])
    }
}

/// Gram matrices `[[0, F_i^*], [G_i, 0]]` on `A^m + A^n`, the second summand holding duals of `A^n`.
pub fn hyperbolic_sesquilinear(spec: &HyperbolicSpec) -> SesquilinearSystem {
    let a = spec.algebra.as_ref();
    let (m, n) = (spec.m, spec.n);
    let grams = spec
        .arrows
        .iter()
        .map(|(f, g)| {
            let fs = f.conj_transpose(a);
            Matrix::from_blocks(&[vec![&Matrix::zeros(a, m, m), &fs], vec![g, &Matrix::zeros(a, n, n)]]).unwrap()
        })
        .collect();
    SesquilinearSystem::new(spec.algebra.clone(), m + n, grams).unwrap()
}

/// `[[0, eps I], [I, 0]]` of size `2m`.
pub fn hyperbolic_hermitian_standard(algebra: Arc<InvolutiveAlgebra>, m: usize, eps: Sign) -> SesquilinearSystem {
    let a = algebra.as_ref();
    let e = a.from_int(eps.value());
    let z = Matrix::zeros(a, m, m);
    let gram = Matrix::from_blocks(&[
        vec![&z, &Matrix::scalar_diag(a, &vec![e; m])],
        vec![&Matrix::identity(a, m), &z],
    ])
    .unwrap();
    SesquilinearSystem::single(algebra, gram).unwrap()
}

/// The hyperbolic form is hermitian exactly when every `F_i = G_i`.
pub fn hermitian_iff_equal_arrows(spec: &HyperbolicSpec) -> bool {
    spec.arrows.iter().all(|(f, g)| f == g)
}

/// The hyperbolic form is unimodular exactly when every arrow is invertible.
pub fn unimodular_iff_invertible(spec: &HyperbolicSpec) -> bool {
    let a = spec.algebra.as_ref();
    spec.arrows.iter().all(|(f, g)| f.is_invertible(a) && g.is_invertible(a))
}

/// For `F = G = f` invertible, the map `id + f^*` with
/// `transform(standard, id + f^*) = hyperbolic_sesquilinear(spec)`.
pub fn standard_hyperbolic_isometry(spec: &HyperbolicSpec) -> Result<ModuleMap> {
    if spec.arrows.len() != 1 {
        return Err(Error::Unsupported("the standard form is a single form".into()));
    }
    let (f, g) = &spec.arrows[0];
    if f != g {
        return Err(Error::InvariantViolation("arrows must be equal".into()));
    }
    let a = spec.algebra.as_ref();
    if !f.is_invertible(a) {
        return Err(Error::NotInvertible);
    }
    Ok(ModuleMap { matrix: Matrix::block_diag(a, &[&Matrix::identity(a, spec.m), &f.conj_transpose(a)]) })
}

/// A hyperbolic spec and `P` with `P^* H P = form`, where `H` is the spec's form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicWitness {
    pub spec: HyperbolicSpec,
    pub isometry: ModuleMap,
}

/// Number of specs with `m + n = rank` for `count` arrow pairs.
pub fn hyperbolic_family_size(algebra: &InvolutiveAlgebra, rank: usize, count: usize) -> Result<u64> {
    let s = algebra.finite()?.size() as u64;
    let mut total = 0u64;
    for m in 0..=rank {
        let exp = (2 * count * m * (rank - m)) as u32;
        total = total.saturating_add(s.checked_pow(exp).unwrap_or(u64::MAX));
    }
    Ok(total)
}

fn spec_from_index(fa: &FiniteAlgebra, m: usize, n: usize, count: usize, mut idx: u64) -> Vec<(CodedMatrix, CodedMatrix)> {
    let per = (fa.size() as u64).pow((n * m) as u32);
    let mut mats: Vec<CodedMatrix> = (0..2 * count)
        .map(|_| {
            let x = fa.matrix_from_index(n, m, idx % per);
            idx /= per;
            x
        })
        .collect();
    mats.reverse();
    mats.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}

fn coded_hyperbolic(fa: &FiniteAlgebra, m: usize, n: usize, arrows: &[(CodedMatrix, CodedMatrix)]) -> Vec<CodedMatrix> {
    arrows
        .iter()
        .map(|(f, g)| {
            let fs = f.conj_transpose(fa);
            Matrix::from_blocks(&[vec![&Matrix::zeros(fa, m, m), &fs], vec![g, &Matrix::zeros(fa, n, n)]]).unwrap()
        })
        .collect()
}

/// Searches every spec with `m + n = rank` (increasing `m`, then serialization order
/// of the arrows) for one whose form is isometric to `form`. `search_bound` caps the
/// number of specs; a larger family is refused with `BudgetExceeded`.
pub fn is_hyperbolic_bruteforce(
    form: &SesquilinearSystem,
    search_bound: u64,
    budget: &Budget,
) -> Result<Option<HyperbolicWitness>> {
    let algebra = form.algebra();
    let (fa, grams) = form.coded()?;
    let rank = form.rank();
    let count = form.index_count();
    let family = hyperbolic_family_size(algebra, rank, count)?;
    if family > search_bound {
        return Err(Error::BudgetExceeded { estimate: family, limit: search_bound });
    }
    let mut seen: HashMap<Vec<CodedMatrix>, bool> = HashMap::new();
    for m in 0..=rank {
        let n = rank - m;
        let total = (fa.size() as u64).pow((2 * count * n * m) as u32);
        for idx in 0..total {
            budget.charge(1)?;
            let arrows = spec_from_index(&fa, m, n, count, idx);
            let h = coded_hyperbolic(&fa, m, n, &arrows);
            if seen.contains_key(&h) {
                continue;
            }
            let found = search::find_isometry(&fa, &grams, &h, budget)?;
            seen.insert(h, found.is_some());
            if let Some(p) = found {
                let arrows = arrows.iter().map(|(f, g)| (fa.decode_matrix(f), fa.decode_matrix(g))).collect();
                return Ok(Some(HyperbolicWitness {
                    spec: HyperbolicSpec { algebra: algebra.clone(), m, n, arrows },
                    isometry: ModuleMap { matrix: fa.decode_matrix(&p) },
                }));
            }
        }
    }
    Ok(None)
}

/// For a unimodular `eps`-hermitian single form: hyperbolic iff isometric to the standard
/// form of the same rank.
pub fn is_standard_hyperbolic(form: &SesquilinearSystem, eps: Sign, budget: &Budget) -> Result<Option<ModuleMap>> {
    if form.index_count() != 1 || !is_epsilon_hermitian(form, eps) || !is_unimodular(form) {
        return Err(Error::InvariantViolation("expected a unimodular epsilon-hermitian form".into()));
    }
    if form.rank() % 2 == 1 {
        return Ok(None);
    }
    let h = hyperbolic_hermitian_standard(form.algebra().clone(), form.rank() / 2, eps);
    is_isometric_bruteforce(form, &h, budget)
}

/// Hyperbolic forms `h, h'` and an isometry `P` with `P^*(b + h')P = a + h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittWitness {
    pub h: SesquilinearSystem,
    pub h_prime: SesquilinearSystem,
    pub isometry: ModuleMap,
}

/// Isometry classes of hyperbolic forms of each rank up to `bound`, in search order.
fn hyperbolic_classes(
    algebra: &Arc<InvolutiveAlgebra>,
    count: usize,
    bound: usize,
    budget: &Budget,
) -> Result<Vec<SesquilinearSystem>> {
    let fa = algebra.finite()?;
    let mut out: Vec<SesquilinearSystem> = Vec::new();
    for rank in 0..=bound {
        let mut reps: Vec<Vec<CodedMatrix>> = Vec::new();
        for m in 0..=rank {
            let n = rank - m;
            let total = (fa.size() as u64).pow((2 * count * n * m) as u32);
            for idx in 0..total {
                budget.charge(1)?;
                let h = coded_hyperbolic(&fa, m, n, &spec_from_index(&fa, m, n, count, idx));
                let mut new = true;
                for r in &reps {
                    if search::find_isometry(&fa, &h, r, budget)?.is_some() {
                        new = false;
                        break;
                    }
                }
                if new {
                    reps.push(h);
                }
            }
        }
        out.extend(reps.iter().map(|g| SesquilinearSystem::from_coded(algebra, &fa, g)));
    }
    Ok(out)
}

/// Searches hyperbolic `h, h'` of rank at most `stab_bound` with `a + h` isometric to `b + h'`.
/// `None` means no certificate within the bound.
pub fn witt_equivalent(
    a: &SesquilinearSystem,
    b: &SesquilinearSystem,
    stab_bound: usize,
    budget: &Budget,
) -> Result<Option<WittWitness>> {
    if a.index_count() != b.index_count() {
        return Err(Error::IndexSetMismatch { left: a.index_count(), right: b.index_count() });
    }
    let hyps = hyperbolic_classes(a.algebra(), a.index_count(), stab_bound, budget)?;
    for h in &hyps {
        for h2 in &hyps {
            if a.rank() + h.rank() != b.rank() + h2.rank() {
                continue;
            }
            let left = orthogonal_sum(a, h)?;
            let right = orthogonal_sum(b, h2)?;
            if let Some(p) = is_isometric_bruteforce(&left, &right, budget)? {
                return Ok(Some(WittWitness { h: h.clone(), h_prime: h2.clone(), isometry: p }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittClassEntry {
    pub rank: usize,
    pub grams: Vec<MatrixOverA>,
    pub is_hyperbolic: bool,
    pub witt_class_id: usize,
}

/// `(left, right, sum)` in terms of Witt class ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumLawEntry {
    pub left: usize,
    pub right: usize,
    pub sum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittClassTable {
    pub rank_bound: usize,
    pub index_count: usize,
    pub filter: FormFilter,
    /// Sorted by rank, then serialization order of the representative.
    pub classes: Vec<WittClassEntry>,
    pub witt_class_count: usize,
    pub sum_law: Vec<SumLawEntry>,
    /// False if two sums of the same pair of Witt classes landed in different classes.
    pub sum_law_consistent: bool,
}

impl WittClassTable {
    pub fn representative(&self, idx: usize, algebra: &Arc<InvolutiveAlgebra>) -> SesquilinearSystem {
        let c = &self.classes[idx];
        SesquilinearSystem::new(algebra.clone(), c.rank, c.grams.clone()).unwrap()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as root so the trivial class stays at 0
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// Classifies all forms up to `rank_bound`, flags hyperbolic classes, and merges
/// classes `a` and `a + h` for hyperbolic `h` whenever the sum stays within the bound.
///
/// `filter` must be closed under orthogonal sum (every [`FormFilter`] variant is).
pub fn build_witt_table(
    algebra: &Arc<InvolutiveAlgebra>,
    rank_bound: usize,
    count: usize,
    filter: FormFilter,
    budget: &Budget,
) -> Result<WittClassTable> {
    let fa = algebra.finite()?;
    let mut classes: Vec<SesquilinearSystem> = Vec::new();
    let mut by_rank: Vec<Vec<usize>> = Vec::new();
    for r in 0..=rank_bound {
        let reps = classify_isometry_classes(algebra, r, count, filter, budget)?;
        by_rank.push((classes.len()..classes.len() + reps.len()).collect());
        classes.extend(reps);
    }
    let family_bound = u64::MAX;
    let mut hyperbolic = Vec::with_capacity(classes.len());
    for c in &classes {
        let h = is_hyperbolic_bruteforce(c, family_bound, budget)?.is_some();
        if let FormFilter::UnimodularHermitian(eps) = filter {
            if count == 1 && is_standard_hyperbolic(c, eps, budget)?.is_some() != h {
                return Err(Error::InvariantViolation(format!(
                    "hyperbolicity search and standard form disagree on {:?}",
                    c.grams()
                )));
            }
        }
        hyperbolic.push(h);
    }
    let class_of = |form: &SesquilinearSystem, budget: &Budget| -> Result<usize> {
        let (_, g) = form.coded()?;
        for &idx in &by_rank[form.rank()] {
            let (_, rep) = classes[idx].coded()?;
            if search::find_isometry(&fa, &g, &rep, budget)?.is_some() {
                return Ok(idx);
            }
        }
        Err(Error::InvariantViolation("orthogonal sum fell outside the classification".into()))
    };
    let mut uf = UnionFind((0..classes.len()).collect());
    let mut sums: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            if classes[i].rank() + classes[j].rank() > rank_bound {
                continue;
            }
            let s = class_of(&orthogonal_sum(&classes[i], &classes[j])?, budget)?;
            sums.insert((i, j), s);
            if hyperbolic[j] {
                uf.union(i, s);
            }
        }
    }
    // rank 0 is class 0 and hyperbolic; every hyperbolic class joins it via 0 + h = h
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut entries = Vec::with_capacity(classes.len());
    for (i, c) in classes.iter().enumerate() {
        let root = uf.find(i);
        let next = ids.len();
        let id = *ids.entry(root).or_insert(next);
        entries.push(WittClassEntry {
            rank: c.rank(),
            grams: c.grams().to_vec(),
            is_hyperbolic: hyperbolic[i],
            witt_class_id: id,
        });
    }
    let mut law: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut consistent = true;
    for (&(i, j), &s) in &sums {
        let key = (entries[i].witt_class_id, entries[j].witt_class_id);
        let val = entries[s].witt_class_id;
        match law.get(&key) {
            Some(&v) if v != val => consistent = false,
            _ => {
                law.insert(key, val);
            }
        }
    }
    Ok(WittClassTable {
        rank_bound,
        index_count: count,
        filter,
        witt_class_count: ids.len(),
        classes: entries,
        sum_law: law.into_iter().map(|((left, right), sum)| SumLawEntry { left, right, sum }).collect(),
        sum_law_consistent: consistent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancellationReport {
    /// `V' + V` isometric to `V'' + V`.
    pub premise: bool,
    /// `V'` isometric to `V''`.
    pub conclusion: bool,
}

impl CancellationReport {
    pub fn consistent(&self) -> bool {
        !self.premise || self.conclusion
    }
}

pub fn cancellation_check(
    v1: &SesquilinearSystem,
    v2: &SesquilinearSystem,
    v: &SesquilinearSystem,
    budget: &Budget,
) -> Result<CancellationReport> {
    let premise = is_isometric_bruteforce(&orthogonal_sum(v1, v)?, &orthogonal_sum(v2, v)?, budget)?.is_some();
    let conclusion = is_isometric_bruteforce(v1, v2, budget)?.is_some();
    Ok(CancellationReport { premise, conclusion })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationSweep {
    pub max_rank: usize,
    pub index_count: usize,
    pub triples_checked: u64,
    pub premises_holding: u64,
    pub counterexamples: Vec<[Vec<MatrixOverA>; 3]>,
}

/// Runs [`cancellation_check`] with `V', V''` over class representatives and `V` over
/// every Gram tuple, all of rank at most `max_rank`.
pub fn cancellation_sweep(
    algebra: &Arc<InvolutiveAlgebra>,
    max_rank: usize,
    count: usize,
    budget: &Budget,
) -> Result<CancellationSweep> {
    let fa = algebra.finite()?;
    let mut report = CancellationSweep {
        max_rank,
        index_count: count,
        triples_checked: 0,
        premises_holding: 0,
        counterexamples: vec![],
    };
    for r in 0..=max_rank {
        let reps = classify_isometry_classes(algebra, r, count, FormFilter::All, budget)?;
        for r2 in 0..=max_rank {
            let total = (fa.size() as u64).pow((count * r2 * r2) as u32);
            for idx in 0..total {
                let v = SesquilinearSystem::from_coded(algebra, &fa, &search::tuple_from_index(&fa, r2, count, idx));
                for (i, a) in reps.iter().enumerate() {
                    for b in &reps[i..] {
                        let rep = cancellation_check(a, b, &v, budget)?;
                        report.triples_checked += 1;
                        report.premises_holding += rep.premise as u64;
                        if !rep.consistent() {
                            report.counterexamples.push([
                                a.grams().to_vec(),
                                b.grams().to_vec(),
                                v.grams().to_vec(),
                            ]);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
