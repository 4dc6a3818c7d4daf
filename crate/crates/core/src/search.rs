//! Exact search for the sparsest nonzero function in `U_{[i,j]}(n,q)`.
//!
//! Let `P = Σ_{t∉[i,j]} E_t`. A nonzero `f ∈ U_{[i,j]}` with support inside
//! `S` exists iff the columns of `P` indexed by `S` are linearly dependent.
//! Candidate sets are enumerated depth-first in lexicographic order while an
//! echelon form of the chosen columns is maintained incrementally over a
//! large prime field. Independence mod `p` is conclusive; every dependency
//! mod `p` is confirmed by an exact rational kernel computation before a
//! witness is reported.
//!
//! With symmetry pruning, only sets that are lexicographically minimal in
//! their orbit under a group of graph automorphisms are visited. Minimality
//! is inherited by the prefix obtained by dropping the largest element, so
//! pruning a non-minimal node never hides a minimal one.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::{
    build_f1, build_f2, family_for, min_support_bound, Family, SupportBound,
};
use crate::error::{Error, Result};
use crate::function::{GridFunction, Rational};
use crate::linalg::{to_mod, IntMatrix, ModEchelon};
use crate::perm::Permutation;
use crate::spectra::{in_direct_sum, krawtchouk, EigenRange};
use crate::word::{decode_index, vertex_count};

/// Largest `q^n` the search accepts.
pub const MAX_VERTICES: usize = 4096;

/// Cap on stored group entries (`|G| · q^n`).
const GROUP_ENTRY_LIMIT: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_support: usize,
    /// Cap on rank tests (one per visited candidate set).
    pub max_subsets: Option<u64>,
    pub symmetry_pruning: bool,
}

impl SearchBudget {
    pub fn new(max_support: usize) -> Self {
        Self {
            max_support: max_support.max(1),
            max_subsets: None,
            symmetry_pruning: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// Normalized witness: coprime integers, first nonzero value positive.
    pub witness: Option<GridFunction>,
    /// The candidate set whose columns were found dependent.
    pub support_set: Option<Vec<usize>>,
    pub min_found: Option<usize>,
    pub subsets_examined: u64,
}

/// Automorphisms of `H(n,q)` acting on vertex indices.
struct SymmetryGroup {
    /// `maps[g][v]` is the image of vertex `v`.
    maps: Vec<Vec<u32>>,
    /// Group elements sending each vertex to the all-zero word.
    to_zero: Vec<Vec<u32>>,
}

fn symbol_maps(q: u32, kind: usize) -> Vec<Vec<u32>> {
    match kind {
        0 => Permutation::all(q as usize)
            .into_iter()
            .map(|p| p.images().iter().map(|&x| x as u32).collect())
            .collect(),
        1 => {
            let mut maps = Vec::new();
            for b in 0..q {
                maps.push((0..q).map(|x| (x + b) % q).collect());
                if q > 2 {
                    maps.push((0..q).map(|x| (q - x + b) % q).collect());
                }
            }
            maps
        }
        _ => (0..q)
            .map(|b| (0..q).map(|x| (x + b) % q).collect())
            .collect(),
    }
}

impl SymmetryGroup {
    /// Coordinate permutations composed with per-coordinate symbol maps,
    /// using the largest symbol group (all, dihedral, cyclic) that fits the
    /// storage cap. Falls back to translations only.
    fn build(n: usize, q: u32, size: usize) -> Option<Self> {
        let coord_perms = Permutation::all(n);
        for kind in 0..3 {
            let maps = symbol_maps(q, kind);
            let order = (maps.len() as u128).pow(n as u32) * coord_perms.len() as u128;
            if order * size as u128 <= GROUP_ENTRY_LIMIT as u128 {
                return Some(Self::generate(n, q, size, &coord_perms, &maps));
            }
        }
        let translations = symbol_maps(q, 2);
        if (size as u128) * (size as u128) <= GROUP_ENTRY_LIMIT as u128 {
            return Some(Self::generate(
                n,
                q,
                size,
                &[Permutation::identity(n)],
                &translations,
            ));
        }
        None
    }

    fn generate(
        n: usize,
        q: u32,
        size: usize,
        coord_perms: &[Permutation],
        symbol_maps: &[Vec<u32>],
    ) -> Self {
        let mut digits = vec![0u32; size * n];
        for v in 0..size {
            decode_index(v, q, &mut digits[v * n..(v + 1) * n]);
        }
        let mut maps = Vec::new();
        let mut choice = vec![0usize; n];
        let mut image = vec![0u32; n];
        for pi in coord_perms {
            choice.iter_mut().for_each(|c| *c = 0);
            loop {
                let map: Vec<u32> = (0..size)
                    .map(|v| {
                        let x = &digits[v * n..(v + 1) * n];
                        for p in 0..n {
                            image[pi.apply(p)] = symbol_maps[choice[p]][x[p] as usize];
                        }
                        image.iter().fold(0u32, |acc, &s| acc * q + s)
                    })
                    .collect();
                if map.iter().enumerate().any(|(v, &w)| v as u32 != w) {
                    maps.push(map);
                }
                // odometer over symbol-map choices
                let mut p = 0;
                while p < n {
                    choice[p] += 1;
                    if choice[p] < symbol_maps.len() {
                        break;
                    }
                    choice[p] = 0;
                    p += 1;
                }
                if p == n {
                    break;
                }
            }
        }
        let mut to_zero = vec![Vec::new(); size];
        for (g, map) in maps.iter().enumerate() {
            for (v, &w) in map.iter().enumerate() {
                if w == 0 {
                    to_zero[v].push(g as u32);
                }
            }
        }
        Self { maps, to_zero }
    }

    /// `set` (sorted) is lexicographically minimal among its images.
    fn is_canonical(&self, set: &[usize], buf: &mut Vec<u32>) -> bool {
        if set[0] != 0 {
            return false;
        }
        for &s in set {
            for &g in &self.to_zero[s] {
                let map = &self.maps[g as usize];
                buf.clear();
                buf.extend(set.iter().map(|&v| map[v]));
                buf.sort_unstable();
                for (a, &b) in buf.iter().zip(set) {
                    match (*a as usize).cmp(&b) {
                        std::cmp::Ordering::Less => return false,
                        std::cmp::Ordering::Greater => break,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
        }
        true
    }
}

/// The complement projector `q^n · P` and the search state over it.
pub struct SupportSearch {
    n: usize,
    q: u32,
    size: usize,
    range: EigenRange,
    digits: Vec<u32>,
    /// `q^n · P[x][y]` as a function of `d(x,y)`.
    kernel: Vec<i128>,
    kernel_mod: Vec<u64>,
    group: Option<SymmetryGroup>,
}

struct Walk<'a> {
    search: &'a SupportSearch,
    limit: usize,
    max_subsets: Option<u64>,
    pruning: bool,
    examined: u64,
    buf: Vec<u32>,
}

enum Step {
    Found(Vec<usize>, GridFunction),
    Exhausted,
    Budget,
}

impl SupportSearch {
    pub fn new(n: usize, q: u32, range: EigenRange) -> Result<Self> {
        range.check(n)?;
        let size = vertex_count(n, q)?;
        if size > MAX_VERTICES {
            return Err(Error::Infeasible {
                size: size as u128,
                limit: MAX_VERTICES as u128,
            });
        }
        let mut kernel = vec![0i128; n + 1];
        for t in (0..=n).filter(|&t| !range.contains(t)) {
            for (d, slot) in kernel.iter_mut().enumerate() {
                *slot += krawtchouk(n, q, t, d)?
                    .to_i128()
                    .expect("Krawtchouk values fit in i128 at search scale");
            }
        }
        let kernel_mod = kernel.iter().map(|&v| to_mod(v)).collect();
        let mut digits = vec![0u32; size * n];
        for v in 0..size {
            decode_index(v, q, &mut digits[v * n..(v + 1) * n]);
        }
        Ok(Self {
            n,
            q,
            size,
            range,
            digits,
            kernel,
            kernel_mod,
            group: None,
        })
    }

    fn word(&self, v: usize) -> &[u32] {
        &self.digits[v * self.n..(v + 1) * self.n]
    }

    fn dist(&self, x: usize, y: usize) -> usize {
        self.word(x)
            .iter()
            .zip(self.word(y))
            .filter(|(a, b)| a != b)
            .count()
    }

    fn column_mod(&self, y: usize) -> Vec<u64> {
        (0..self.size)
            .map(|x| self.kernel_mod[self.dist(x, y)])
            .collect()
    }

    fn exact_witness(&self, set: &[usize]) -> Option<GridFunction> {
        let columns: Vec<Vec<BigInt>> = set
            .iter()
            .map(|&y| {
                (0..self.size)
                    .map(|x| BigInt::from(self.kernel[self.dist(x, y)]))
                    .collect()
            })
            .collect();
        let kernel = IntMatrix::from_columns(self.size, &columns).kernel();
        let coeffs = kernel.into_iter().next()?;
        let mut values = vec![Rational::zero(); self.size];
        for (&y, c) in set.iter().zip(coeffs) {
            values[y] = c;
        }
        let f = GridFunction::from_values(self.n, self.q, values).expect("shape fits");
        Some(f.normalized())
    }

    fn ensure_group(&mut self) {
        if self.group.is_none() {
            self.group = SymmetryGroup::build(self.n, self.q, self.size);
        }
    }

    /// Decides whether a nonzero member with support at most `s` exists.
    pub fn exists_with_support_at_most(
        &mut self,
        s: usize,
        budget: &SearchBudget,
    ) -> Result<SearchOutcome> {
        if s == 0 {
            return Err(Error::Precondition(
                "support bound must be at least 1".into(),
            ));
        }
        if budget.symmetry_pruning {
            self.ensure_group();
        }
        let mut walk = Walk {
            search: self,
            limit: s.min(self.size),
            max_subsets: budget.max_subsets,
            pruning: budget.symmetry_pruning,
            examined: 0,
            buf: Vec::new(),
        };
        let mut set = Vec::with_capacity(s);
        let mut echelon = ModEchelon::new();
        let step = walk.extend(&mut set, &mut echelon, false);
        let examined = walk.examined;
        let outcome = match step {
            Step::Found(support_set, witness) => {
                let support = witness.support_size();
                if witness.is_zero() || support > s || !in_direct_sum(&witness, self.range)? {
                    return Err(Error::Verification(format!(
                        "witness on {support_set:?} does not re-verify"
                    )));
                }
                SearchOutcome {
                    status: SearchStatus::Found,
                    witness: Some(witness),
                    support_set: Some(support_set),
                    min_found: Some(support),
                    subsets_examined: examined,
                }
            }
            Step::Exhausted => SearchOutcome {
                status: SearchStatus::Exhausted,
                witness: None,
                support_set: None,
                min_found: None,
                subsets_examined: examined,
            },
            Step::Budget => SearchOutcome {
                status: SearchStatus::BudgetExceeded,
                witness: None,
                support_set: None,
                min_found: None,
                subsets_examined: examined,
            },
        };
        Ok(outcome)
    }
}

impl Walk<'_> {
    /// Tries every extension of the independent set `set` by a larger
    /// vertex. `exact` switches off the modular filter after a false alarm.
    fn extend(&mut self, set: &mut Vec<usize>, echelon: &mut ModEchelon, exact: bool) -> Step {
        let start = set.last().map_or(0, |&v| v + 1);
        let search = self.search;
        for y in start..search.size {
            set.push(y);
            if self.pruning && !self.canonical(set) {
                set.pop();
                continue;
            }
            self.examined += 1;
            if self.max_subsets.is_some_and(|cap| self.examined > cap) {
                set.pop();
                return Step::Budget;
            }
            let mut pushed = false;
            let mut child_exact = exact;
            let independent = if exact {
                match search.exact_witness(set) {
                    Some(w) => return Step::Found(set.clone(), w),
                    None => true,
                }
            } else if echelon.push(search.column_mod(y)) {
                pushed = true;
                true
            } else {
                match search.exact_witness(set) {
                    Some(w) => return Step::Found(set.clone(), w),
                    None => {
                        child_exact = true;
                        true
                    }
                }
            };
            if independent && set.len() < self.limit {
                match self.extend(set, echelon, child_exact) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            if pushed {
                echelon.pop();
            }
            set.pop();
        }
        Step::Exhausted
    }

    fn canonical(&mut self, set: &[usize]) -> bool {
        match &self.search.group {
            Some(group) => group.is_canonical(set, &mut self.buf),
            None => set[0] == 0,
        }
    }
}

/// See [`SupportSearch::exists_with_support_at_most`].
pub fn exists_with_support_at_most(
    n: usize,
    q: u32,
    range: EigenRange,
    s: usize,
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    SupportSearch::new(n, q, range)?.exists_with_support_at_most(s, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimumReport {
    Conclusive {
        minimum: usize,
        witness: GridFunction,
        subsets_examined: u64,
    },
    /// The minimum lies in `[lower, upper]`.
    Inconclusive {
        lower: usize,
        upper: Option<u128>,
        subsets_examined: u64,
    },
}

impl MinimumReport {
    pub fn minimum(&self) -> Option<usize> {
        match self {
            MinimumReport::Conclusive { minimum, .. } => Some(*minimum),
            MinimumReport::Inconclusive { .. } => None,
        }
    }
}

/// Support of the standard family construction for `(n,q,i,j)`.
pub fn construction_support(n: usize, q: u32, range: EigenRange) -> Result<(Family, GridFunction)> {
    let family = family_for(n, range.lo, range.hi);
    let one = Rational::from_integer(1.into());
    let f = match family {
        Family::F1 => build_f1(n, q, range.lo, range.hi, None, &one)?,
        Family::F2 => build_f2(n, q, range.lo, range.hi, None, &one)?,
    };
    Ok((family, f))
}

/// Smallest `s` with a nonzero member of support `s`, by linear search.
/// `budget.max_subsets` caps the total number of rank tests.
pub fn find_minimum(
    n: usize,
    q: u32,
    range: EigenRange,
    budget: &SearchBudget,
) -> Result<MinimumReport> {
    let mut search = SupportSearch::new(n, q, range)?;
    let mut examined = 0u64;
    let upper = construction_support(n, q, range)
        .ok()
        .map(|(_, f)| f.support_size() as u128);
    for s in 1..=budget.max_support {
        let remaining = SearchBudget {
            max_subsets: budget.max_subsets.map(|cap| cap.saturating_sub(examined)),
            ..*budget
        };
        let outcome = search.exists_with_support_at_most(s, &remaining)?;
        examined += outcome.subsets_examined;
        match outcome.status {
            SearchStatus::Found => {
                return Ok(MinimumReport::Conclusive {
                    minimum: outcome.min_found.expect("found implies support"),
                    witness: outcome.witness.expect("found implies witness"),
                    subsets_examined: examined,
                })
            }
            SearchStatus::Exhausted => {}
            SearchStatus::BudgetExceeded => {
                return Ok(MinimumReport::Inconclusive {
                    lower: s,
                    upper,
                    subsets_examined: examined,
                })
            }
        }
    }
    Ok(MinimumReport::Inconclusive {
        lower: budget.max_support + 1,
        upper,
        subsets_examined: examined,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVerdict {
    /// Nothing sparser exists and the construction attains the bound.
    Verified,
    /// The bound value is not the minimum.
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub bound: SupportBound,
    /// Search outcome for support `bound - 1`.
    pub below: SearchOutcome,
    pub construction_family: Family,
    pub construction_support: usize,
    pub construction_member: bool,
    pub verdict: BoundVerdict,
}

/// Checks that the support formula is exactly the minimum for `(n,q,[i,j])`:
/// no member of support `< B` exists and the family construction attains `B`.
pub fn verify_lower_bound(
    n: usize,
    q: u32,
    range: EigenRange,
    budget: &SearchBudget,
) -> Result<LowerBoundReport> {
    let bound = min_support_bound(n, q, range.lo, range.hi)?;
    let b = usize::try_from(bound.value).map_err(|_| Error::Infeasible {
        size: bound.value,
        limit: usize::MAX as u128,
    })?;
    let below = if b <= 1 {
        SearchOutcome {
            status: SearchStatus::Exhausted,
            witness: None,
            support_set: None,
            min_found: None,
            subsets_examined: 0,
        }
    } else {
        exists_with_support_at_most(n, q, range, b - 1, budget)?
    };
    let (family, construction) = construction_support(n, q, range)?;
    let member = in_direct_sum(&construction, range)?;
    let attains = member && construction.support_size() == b;
    let verdict = match below.status {
        SearchStatus::Found => BoundVerdict::Refuted,
        SearchStatus::Exhausted if attains => BoundVerdict::Verified,
        SearchStatus::Exhausted => BoundVerdict::Refuted,
        SearchStatus::BudgetExceeded => BoundVerdict::Inconclusive,
    };
    Ok(LowerBoundReport {
        bound,
        below,
        construction_family: family,
        construction_support: construction.support_size(),
        construction_member: member,
        verdict,
    })
}
