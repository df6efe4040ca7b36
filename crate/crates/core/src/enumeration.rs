//! Exhaustive classification of relations on `[4]`.
//!
//! Every one of the `2^24` slot masks is tested against compiled rule
//! instances. Results are grouped into orbits under index permutations and
//! ordered by canonical representative, so the output does not depend on the
//! number of worker threads.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::axioms::{self, ImplicationRule, Schema};
use crate::error::{Error, Result};
use crate::fast4;
use crate::graph::{separation_graphoid, Graph};
use crate::relation::Relation;

const SLOTS: u32 = 24;
const TOTAL: u32 = 1 << SLOTS;

/// A rule instance reduced to two slot masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CompiledRule {
    pub antecedent: u32,
    pub consequent: u32,
}

impl CompiledRule {
    #[inline]
    pub fn holds(&self, mask: u32) -> bool {
        mask & self.antecedent != self.antecedent || mask & self.consequent == self.consequent
    }
}

pub fn compile(rules: &[ImplicationRule]) -> Vec<CompiledRule> {
    let mut seen = HashSet::new();
    rules
        .iter()
        .map(|r| CompiledRule {
            antecedent: r.antecedent.mask(),
            consequent: r.consequent.mask(),
        })
        .filter(|c| seen.insert(*c))
        .collect()
}

/// Weak transitivity instance as masks.
#[derive(Clone, Copy, Debug)]
struct CompiledWt {
    premise: u32,
    left: u32,
    right: u32,
}

fn compiled_wt() -> &'static [CompiledWt] {
    static WT: OnceLock<Vec<CompiledWt>> = OnceLock::new();
    WT.get_or_init(|| {
        axioms::weak_transitivity_instances(4)
            .expect("m = 4")
            .iter()
            .map(|w| CompiledWt {
                premise: w.premise.mask(),
                left: w.left.mask(),
                right: w.right.mask(),
            })
            .collect()
    })
}

#[inline]
fn wt_holds(mask: u32) -> bool {
    compiled_wt().iter().all(|w| {
        mask & w.premise != w.premise || mask & w.left == w.left || mask & w.right == w.right
    })
}

#[inline]
fn closed(mask: u32, rules: &[CompiledRule]) -> bool {
    rules.iter().all(|r| r.holds(mask))
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map(|pool| pool.install(f))
        .unwrap_or_else(|_| panic!("cannot start a pool with {jobs} threads"))
}

/// All masks in `0..2^24` closed under `rules`, sorted ascending.
///
/// `jobs = 0` uses the global thread pool; `jobs = 1` runs sequentially.
pub fn scan_closed(rules: &[CompiledRule], jobs: usize) -> Vec<u32> {
    const CHUNK: u32 = 1 << 16;
    let work = |chunk: u32| -> Vec<u32> {
        let start = chunk * CHUNK;
        (start..start + CHUNK).filter(|&m| closed(m, rules)).collect()
    };
    if jobs == 1 {
        return (0..TOTAL / CHUNK).flat_map(work).collect();
    }
    with_pool(jobs, || {
        let parts: Vec<Vec<u32>> = (0..TOTAL / CHUNK).into_par_iter().map(work).collect();
        parts.concat()
    })
}

/// One equivalence class: canonical representative and number of members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub representative: Relation,
    pub orbit_size: usize,
}

/// Equivalence classes ordered by canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClassList {
    pub classes: Vec<ClassEntry>,
    pub total_labeled: usize,
}

impl ClassList {
    /// Groups labeled masks (assumed closed under permutations) into classes.
    pub fn from_labeled(masks: &[u32]) -> ClassList {
        let mut reps: BTreeMap<u32, usize> = BTreeMap::new();
        for &m in masks {
            *reps.entry(fast4::canonical(m).0).or_insert(0) += 1;
        }
        let classes: Vec<ClassEntry> = reps
            .into_iter()
            .map(|(rep, count)| ClassEntry {
                representative: Relation::from_mask(4, rep).expect("24-bit mask"),
                orbit_size: count,
            })
            .collect();
        ClassList {
            total_labeled: masks.len(),
            classes,
        }
    }

    /// Builds the list from class representatives, computing orbit sizes.
    pub fn from_representatives<I: IntoIterator<Item = u32>>(reps: I) -> ClassList {
        let mut canon: Vec<u32> = reps.into_iter().map(|m| fast4::canonical(m).0).collect();
        canon.sort_unstable();
        canon.dedup();
        let classes: Vec<ClassEntry> = canon
            .into_iter()
            .map(|rep| ClassEntry {
                representative: Relation::from_mask(4, rep).expect("24-bit mask"),
                orbit_size: fast4::orbit_size(rep),
            })
            .collect();
        ClassList {
            total_labeled: classes.iter().map(|c| c.orbit_size).sum(),
            classes,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains_class(&self, l: &Relation) -> bool {
        let rep = Relation::from_mask(4, fast4::canonical(l.mask()).0).expect("24-bit mask");
        self.classes
            .binary_search_by(|c| c.representative.cmp(&rep))
            .is_ok()
    }

    /// All labeled members, sorted by mask.
    pub fn labeled_masks(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .classes
            .iter()
            .flat_map(|c| fast4::orbit(c.representative.mask()))
            .collect();
        out.sort_unstable();
        out
    }
}

/// The results of the exhaustive scans, computed once.
#[derive(Debug)]
pub struct Catalog {
    pub semigaussoid_masks: Vec<u32>,
    pub representable_masks: Vec<u32>,
    pub semigaussoids: ClassList,
    pub representable: ClassList,
    pub complete: ClassList,
}

impl Catalog {
    pub fn compute(jobs: usize) -> Catalog {
        let semigaussoid_rules = compile(axioms::semigaussoid_rule_set(4).expect("m = 4").rules());
        let semigaussoid_masks = scan_closed(&semigaussoid_rules, jobs);
        let moreci = moreci_compiled();
        let representable_masks: Vec<u32> = semigaussoid_masks
            .iter()
            .copied()
            .filter(|&m| closed(m, &moreci) && wt_holds(m))
            .collect();
        let semigaussoids = ClassList::from_labeled(&semigaussoid_masks);
        let representable = ClassList::from_labeled(&representable_masks);
        let complete_reps: Vec<u32> = semigaussoids
            .classes
            .iter()
            .map(|c| c.representative.mask())
            .filter(|&m| intersection_of_containing(m, &representable_masks) == m)
            .collect();
        let complete = ClassList::from_representatives(complete_reps);
        Catalog {
            semigaussoid_masks,
            representable_masks,
            semigaussoids,
            representable,
            complete,
        }
    }

    pub fn is_representable(&self, l: &Relation) -> bool {
        check4(l).is_ok() && self.representable_masks.binary_search(&l.mask()).is_ok()
    }

    pub fn is_semigaussoid(&self, l: &Relation) -> bool {
        check4(l).is_ok() && self.semigaussoid_masks.binary_search(&l.mask()).is_ok()
    }

    /// Intersection of all labeled representable relations containing `l`.
    pub fn completion(&self, l: &Relation) -> Result<Relation> {
        check4(l)?;
        Relation::from_mask(4, intersection_of_containing(l.mask(), &self.representable_masks))
    }

    pub fn is_complete(&self, l: &Relation) -> Result<bool> {
        Ok(self.completion(l)? == *l)
    }

    /// Inclusion-minimal labeled representable relations containing `l`.
    pub fn minimal_representable_supersets(&self, l: &Relation) -> Result<Vec<Relation>> {
        check4(l)?;
        let mask = l.mask();
        let supers: Vec<u32> = self
            .representable_masks
            .iter()
            .copied()
            .filter(|&r| r & mask == mask)
            .collect();
        let minimal: Vec<u32> = supers
            .iter()
            .copied()
            .filter(|&r| !supers.iter().any(|&s| s != r && s & r == s))
            .collect();
        minimal.into_iter().map(|r| Relation::from_mask(4, r)).collect()
    }
}

fn check4(l: &Relation) -> Result<()> {
    if l.ground() == 4 {
        Ok(())
    } else {
        Err(Error::GroundMismatch(4, l.ground()))
    }
}

fn intersection_of_containing(mask: u32, representable: &[u32]) -> u32 {
    representable
        .iter()
        .filter(|&&r| r & mask == mask)
        .fold(TOTAL - 1, |acc, &r| acc & r)
}

fn moreci_compiled() -> Vec<CompiledRule> {
    let rules = axioms::instantiate_schemata(4, &Schema::moreci()).expect("m = 4");
    compile(rules.rules())
}

/// Shared catalog computed with the global thread pool.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::compute(0))
}

pub fn enumerate_semigaussoids() -> ClassList {
    catalog().semigaussoids.clone()
}

pub fn enumerate_representable() -> ClassList {
    catalog().representable.clone()
}

pub fn enumerate_complete() -> ClassList {
    catalog().complete.clone()
}

/// A minimal representable decomposition of a complete relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub target: Relation,
    pub components: Vec<Relation>,
}

impl Decomposition {
    /// Intersection of the components.
    pub fn intersection(&self) -> Relation {
        self.components
            .iter()
            .fold(Relation::full(4).expect("m = 4"), |acc, c| {
                acc.intersection(c).expect("same ground")
            })
    }

    pub fn is_antichain(&self) -> bool {
        self.components.iter().enumerate().all(|(a, x)| {
            self.components
                .iter()
                .enumerate()
                .all(|(b, y)| a == b || !x.subset_of(y))
        })
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.target)?;
        for c in &self.components {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

/// Inclusion-minimal representable supersets of a complete relation on `[4]`.
pub fn minimal_representable_decomposition(l: &Relation) -> Result<Decomposition> {
    let cat = catalog();
    let completion = cat.completion(l)?;
    if completion != *l {
        return Err(Error::NotComplete {
            relation: l.to_string(),
            completion: completion.to_string(),
        });
    }
    let components = cat.minimal_representable_supersets(l)?;
    Ok(Decomposition {
        target: *l,
        components,
    })
}

/// Outcome of the closed-under-all-rules scan.
#[derive(Clone, Debug)]
pub struct CharacterizationReport {
    pub closed_labeled: usize,
    pub closed_classes: ClassList,
    pub matches_complete: bool,
    /// Classes in exactly one of the two lists.
    pub only_in_scan: Vec<Relation>,
    pub only_in_intersection: Vec<Relation>,
}

/// Scans all masks for closure under the full rule set and compares the
/// resulting classes with the intersection-based complete list.
pub fn verify_completeness_characterization(jobs: usize) -> CharacterizationReport {
    let rules = full_rules_ordered();
    let masks = scan_closed(&rules, jobs);
    let closed_classes = ClassList::from_labeled(&masks);
    let complete = &catalog().complete;
    let a: HashSet<Relation> = closed_classes.classes.iter().map(|c| c.representative).collect();
    let b: HashSet<Relation> = complete.classes.iter().map(|c| c.representative).collect();
    let mut only_in_scan: Vec<Relation> = a.difference(&b).copied().collect();
    let mut only_in_intersection: Vec<Relation> = b.difference(&a).copied().collect();
    only_in_scan.sort();
    only_in_intersection.sort();
    CharacterizationReport {
        closed_labeled: masks.len(),
        matches_complete: only_in_scan.is_empty() && only_in_intersection.is_empty(),
        closed_classes,
        only_in_scan,
        only_in_intersection,
    }
}

/// Semigaussoid rules first, so most masks are rejected early.
fn full_rules_ordered() -> Vec<CompiledRule> {
    let full = axioms::full_rule_set();
    let mut rules = compile(full.filtered(|r| matches!(r.schema, Schema::C3 | Schema::C4 | Schema::C5)).rules());
    let rest = compile(full.filtered(|r| !matches!(r.schema, Schema::C3 | Schema::C4 | Schema::C5)).rules());
    rules.extend(rest);
    rules
}

/// First full-rule-set instance violated by `l`, if any.
pub fn completeness_violation(l: &Relation) -> Result<Option<ImplicationRule>> {
    Ok(axioms::first_violation(l, axioms::full_rule_set())?.cloned())
}

/// Counts of semigaussoid classes that violate the four-index implications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoreciFailures {
    /// Violating the implications as stated.
    pub plain: usize,
    /// Violating the implications or their duals.
    pub with_duals: usize,
    /// Classes satisfying the implications as stated that are not representable.
    pub satisfying_not_representable: usize,
    /// Of those, how many are complete.
    pub satisfying_complete: usize,
}

pub fn moreci_failures() -> MoreciFailures {
    let cat = catalog();
    let all = axioms::instantiate_schemata(4, &Schema::moreci()).expect("m = 4");
    let plain = compile(all.filtered(|r| !r.dual).rules());
    let both = compile(all.rules());
    let reps: Vec<u32> = cat.semigaussoids.classes.iter().map(|c| c.representative.mask()).collect();
    let count = |rules: &[CompiledRule]| reps.iter().filter(|&&m| !closed(m, rules)).count();
    let not_rep: Vec<u32> = reps
        .iter()
        .copied()
        .filter(|&m| closed(m, &plain))
        .filter(|&m| !cat.representable.contains_class(&Relation::from_mask(4, m).expect("mask")))
        .collect();
    let complete = not_rep
        .iter()
        .filter(|&&m| intersection_of_containing(m, &cat.representable_masks) == m)
        .count();
    MoreciFailures {
        plain: count(&plain),
        with_duals: count(&both),
        satisfying_not_representable: not_rep.len(),
        satisfying_complete: complete,
    }
}

/// Effect of dropping one appendix schema (with its duals) from the full set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessityEntry {
    pub schema: Schema,
    pub closed_classes: usize,
}

/// For each appendix schema, the number of classes closed under the full
/// rule set with that schema removed. A count above 101 means the schema is
/// not implied by the others.
pub fn appendix_schema_necessity() -> Vec<NecessityEntry> {
    let cat = catalog();
    let base = compile(
        axioms::instantiate_schemata(4, &Schema::moreci())
            .expect("m = 4")
            .rules(),
    );
    let candidates: Vec<u32> = cat
        .semigaussoid_masks
        .iter()
        .copied()
        .filter(|&m| closed(m, &base))
        .collect();
    let full = axioms::full_rule_set();
    Schema::appendix()
        .into_iter()
        .map(|schema| {
            let rules = compile(
                full.filtered(|r| matches!(r.schema, Schema::Ci(_)) && r.schema != schema)
                    .rules(),
            );
            let kept: Vec<u32> = candidates.iter().copied().filter(|&m| closed(m, &rules)).collect();
            NecessityEntry {
                schema,
                closed_classes: ClassList::from_labeled(&kept).len(),
            }
        })
        .collect()
}

/// How relations with equally many 0- and 2-couples are assigned when
/// splitting semigaussoid classes by the count of 0-couples versus 2-couples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BucketConvention {
    /// Keep classes with fewer 0-couples than 2-couples.
    Strict,
    /// Keep classes with at most as many 0-couples as 2-couples.
    NonStrict,
}

/// Semigaussoid classes grouped by the separation graphoid of their graph.
#[derive(Clone, Debug)]
pub struct GraphHistogram {
    pub convention: BucketConvention,
    /// Canonical separation graphoid and the number of kept classes.
    pub buckets: Vec<(Relation, usize)>,
    /// Kept classes in total, the saturated relation included.
    pub kept: usize,
    /// Classes not kept.
    pub rest: usize,
}

pub fn graph_histogram(convention: BucketConvention) -> GraphHistogram {
    let cat = catalog();
    let mut buckets: BTreeMap<Relation, usize> = BTreeMap::new();
    let mut kept = 0;
    let mut rest = 0;
    for class in &cat.semigaussoids.classes {
        let l = class.representative;
        let (n0, n2) = (l.count_order(0), l.count_order(2));
        let keep = match convention {
            BucketConvention::Strict => n0 < n2,
            BucketConvention::NonStrict => n0 <= n2,
        };
        if !keep {
            rest += 1;
            continue;
        }
        kept += 1;
        let g = Graph::of_missing_full_couples(&l);
        let sep = separation_graphoid(&g);
        let canon = Relation::from_mask(4, fast4::canonical(sep.mask()).0).expect("mask");
        *buckets.entry(canon).or_insert(0) += 1;
    }
    GraphHistogram {
        convention,
        buckets: buckets.into_iter().collect(),
        kept,
        rest,
    }
}

/// Orbit sizes keyed by canonical mask, handy for joining against tables.
pub fn class_index(list: &ClassList) -> HashMap<u32, usize> {
    list.classes
        .iter()
        .enumerate()
        .map(|(k, c)| (c.representative.mask(), k))
        .collect()
}
