//! CI implication schemata, their instantiation, closure and weak transitivity.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::relation::{Couple, Permutation, Relation};

/// Identifier of an implication schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    /// `{ij|C, ik|C} => {ij|kC, ik|jC}`
    C3,
    /// `{ij|C, ik|jC} => {ik|C, ij|kC}`
    C4,
    /// `{ij|kC, ik|jC} => {ij|C, ik|C}`
    C5,
    /// The five four-index implications satisfied by every complete relation.
    MoreCi(u8),
    /// The thirteen extra implications for `m = 4`, numbered 1 to 13.
    Ci(u8),
}

impl Schema {
    pub fn name(&self) -> String {
        match self {
            Schema::C3 => "c3".into(),
            Schema::C4 => "c4".into(),
            Schema::C5 => "c5".into(),
            Schema::MoreCi(k) => format!("moreci{k}"),
            Schema::Ci(k) => format!("ci{k}"),
        }
    }

    pub fn parse(name: &str) -> Result<Schema> {
        let lower = name.trim().to_ascii_lowercase();
        let numbered = |prefix: &str, max: u8| -> Option<u8> {
            lower
                .strip_prefix(prefix)
                .and_then(|s| s.parse::<u8>().ok())
                .filter(|k| (1..=max).contains(k))
        };
        match lower.as_str() {
            "c3" => Ok(Schema::C3),
            "c4" => Ok(Schema::C4),
            "c5" => Ok(Schema::C5),
            "cistart" => Ok(Schema::Ci(1)),
            "ciend" => Ok(Schema::Ci(13)),
            _ => {
                if let Some(k) = numbered("moreci", 5) {
                    Ok(Schema::MoreCi(k))
                } else if let Some(k) = numbered("ci", 13) {
                    Ok(Schema::Ci(k))
                } else {
                    Err(Error::UnknownSchema(name.to_string()))
                }
            }
        }
    }

    pub fn semigaussoid() -> Vec<Schema> {
        vec![Schema::C3, Schema::C4, Schema::C5]
    }

    pub fn moreci() -> Vec<Schema> {
        (1..=5).map(Schema::MoreCi).collect()
    }

    pub fn appendix() -> Vec<Schema> {
        (1..=13).map(Schema::Ci).collect()
    }

    /// Semigaussoid axioms plus the five four-index implications.
    pub fn gaussoid() -> Vec<Schema> {
        let mut v = Schema::semigaussoid();
        v.extend(Schema::moreci());
        v
    }

    /// Every schema known to the engine.
    pub fn all() -> Vec<Schema> {
        let mut v = Schema::gaussoid();
        v.extend(Schema::appendix());
        v
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The thirteen extra implications on `[4]`, one index pattern each.
pub const APPENDIX_PATTERNS: [(&str, &str); 13] = [
    ("23|4,23|14,24|1,34|1", "23,23|1,24|13,34|12"),
    ("23,23|1,24|1,34|1", "23|4,23|14,24|13,34|12"),
    ("14|2,14|3,14|23,23|14", "14"),
    ("14,14|2,14|23,23|14", "14|3"),
    ("14,14|2,14|3,23|14", "14|23"),
    ("14,14|23,23|1,23|14", "14|2,14|3"),
    ("14|2,14|3,23|1,23|14", "14,14|23"),
    ("12,14|3,14|23,23|14", "12|3,12|4,12|34,23|4"),
    ("12,14|3,23|4,23|14", "12|3,12|4,12|34,14|23"),
    ("12|3,14|2,23|4,23|14", "12,12|4,12|34,14"),
    ("12|3,14,14|2,23|14", "12,12|4,12|34,23|4"),
    ("14|2,23|1,23|4,23|14", "23"),
    ("14|2,23,23|1,23|14", "23|4"),
];

/// An instance `antecedent => consequent` of a schema.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImplicationRule {
    pub antecedent: Relation,
    pub consequent: Relation,
    pub schema: Schema,
    /// True when the instance was obtained by dualizing the schema pattern.
    pub dual: bool,
}

impl ImplicationRule {
    pub fn new(antecedent: Relation, consequent: Relation, schema: Schema, dual: bool) -> Result<Self> {
        let consequent = consequent.difference(&antecedent)?;
        if consequent.is_empty() {
            return Err(Error::Precondition(format!(
                "{schema} instance {{{antecedent}}} has an empty consequent"
            )));
        }
        Ok(ImplicationRule {
            antecedent,
            consequent,
            schema,
            dual,
        })
    }

    pub fn label(&self) -> String {
        if self.dual {
            format!("{}^d", self.schema)
        } else {
            self.schema.name()
        }
    }

    pub fn fires_on(&self, l: &Relation) -> bool {
        self.antecedent.subset_of(l)
    }

    pub fn is_satisfied_by(&self, l: &Relation) -> bool {
        !self.antecedent.subset_of(l) || self.consequent.subset_of(l)
    }
}

impl fmt::Display for ImplicationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} => {{{}}} [{}]", self.antecedent, self.consequent, self.label())
    }
}

/// Deduplicated list of instantiated rules over a fixed ground set.
#[derive(Clone, Debug)]
pub struct RuleSet {
    ground: usize,
    rules: Vec<ImplicationRule>,
    schemata: BTreeSet<Schema>,
}

impl RuleSet {
    pub fn empty(ground: usize) -> Result<Self> {
        crate::relation::check_ground(ground)?;
        Ok(RuleSet {
            ground,
            rules: Vec::new(),
            schemata: BTreeSet::new(),
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn rules(&self) -> &[ImplicationRule] {
        &self.rules
    }

    pub fn schemata(&self) -> &BTreeSet<Schema> {
        &self.schemata
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Adds rules, skipping exact duplicates of `(antecedent, consequent)`.
    pub fn extend<I: IntoIterator<Item = ImplicationRule>>(&mut self, rules: I) -> Result<()> {
        let mut seen: HashSet<(Relation, Relation)> = self
            .rules
            .iter()
            .map(|r| (r.antecedent, r.consequent))
            .collect();
        for rule in rules {
            if rule.antecedent.ground() != self.ground {
                return Err(Error::GroundMismatch(self.ground, rule.antecedent.ground()));
            }
            self.schemata.insert(rule.schema);
            if seen.insert((rule.antecedent, rule.consequent)) {
                self.rules.push(rule);
            }
        }
        Ok(())
    }

    /// Keeps only rules whose schema passes `keep`.
    pub fn filtered(&self, keep: impl Fn(&ImplicationRule) -> bool) -> RuleSet {
        let rules: Vec<ImplicationRule> = self.rules.iter().filter(|r| keep(r)).cloned().collect();
        RuleSet {
            ground: self.ground,
            schemata: rules.iter().map(|r| r.schema).collect(),
            rules,
        }
    }

    /// Expands a concrete pattern by all index permutations, optionally with duals.
    pub fn add_pattern(
        &mut self,
        schema: Schema,
        antecedent: &Relation,
        consequent: &Relation,
        with_duals: bool,
    ) -> Result<()> {
        let mut fresh = Vec::new();
        for perm in Permutation::all(self.ground) {
            let a = antecedent.permuted(&perm)?;
            let c = consequent.permuted(&perm)?;
            fresh.push(ImplicationRule::new(a, c, schema, false)?);
            if with_duals {
                fresh.push(ImplicationRule::new(a.dual(), c.dual(), schema, true)?);
            }
        }
        self.extend(fresh)
    }

    /// Whether the set of rules is mapped to itself by dualization.
    pub fn is_dual_closed(&self) -> bool {
        let pairs: HashSet<(Relation, Relation)> = self
            .rules
            .iter()
            .map(|r| (r.antecedent, r.consequent))
            .collect();
        self.rules
            .iter()
            .all(|r| pairs.contains(&(r.antecedent.dual(), r.consequent.dual())))
    }
}

fn couple(m: usize, i: usize, j: usize, cond: u8) -> Couple {
    Couple::new(m, i, j, cond).expect("indices checked by caller")
}

fn rel(m: usize, couples: &[Couple]) -> Relation {
    Relation::from_couples(m, couples.iter().copied()).expect("same ground set")
}

/// Subsets of `[m]` avoiding `forbidden`, as bitmasks.
fn subsets_avoiding(m: usize, forbidden: u8) -> impl Iterator<Item = u8> {
    (0u16..(1 << m)).map(|c| c as u8).filter(move |c| c & forbidden == 0)
}

fn semigaussoid_rules(m: usize, schema: Schema) -> Vec<ImplicationRule> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                if i == j || i == k || j == k {
                    continue;
                }
                // c3 and c5 are symmetric in j and k
                if matches!(schema, Schema::C3 | Schema::C5) && j > k {
                    continue;
                }
                let ijk = (1u8 << i) | (1 << j) | (1 << k);
                for c in subsets_avoiding(m, ijk) {
                    let ij_c = couple(m, i, j, c);
                    let ik_c = couple(m, i, k, c);
                    let ij_kc = couple(m, i, j, c | 1 << k);
                    let ik_jc = couple(m, i, k, c | 1 << j);
                    let (a, b) = match schema {
                        Schema::C3 => ([ij_c, ik_c], [ij_kc, ik_jc]),
                        Schema::C4 => ([ij_c, ik_jc], [ik_c, ij_kc]),
                        Schema::C5 => ([ij_kc, ik_jc], [ij_c, ik_c]),
                        _ => unreachable!(),
                    };
                    out.push(
                        ImplicationRule::new(rel(m, &a), rel(m, &b), schema, false)
                            .expect("disjoint by construction"),
                    );
                }
            }
        }
    }
    out
}

fn moreci_rules(m: usize, k: u8) -> Vec<ImplicationRule> {
    let mut out = Vec::new();
    let idx: Vec<usize> = (0..m).collect();
    for &i in &idx {
        for &j in &idx {
            for &kk in &idx {
                for &l in &idx {
                    let set = [i, j, kk, l];
                    let distinct = (0..4).all(|a| (a + 1..4).all(|b| set[a] != set[b]));
                    if !distinct {
                        continue;
                    }
                    let b = |x: usize| 1u8 << x;
                    let forbidden = b(i) | b(j) | b(kk) | b(l);
                    for c in subsets_avoiding(m, forbidden) {
                        let cc = |x, y, extra: u8| couple(m, x, y, c | extra);
                        let (a, cons): (Vec<Couple>, Vec<Couple>) = match k {
                            1 => (
                                vec![cc(i, j, 0), cc(kk, l, 0), cc(i, kk, b(j) | b(l)), cc(j, l, b(i) | b(kk))],
                                vec![cc(i, kk, 0)],
                            ),
                            2 => (
                                vec![cc(i, j, 0), cc(kk, l, b(i)), cc(kk, l, b(j)), cc(i, j, b(kk) | b(l))],
                                vec![cc(kk, l, 0)],
                            ),
                            3 => (
                                vec![cc(i, j, 0), cc(j, l, b(kk)), cc(kk, l, b(i)), cc(i, kk, b(j) | b(l))],
                                vec![cc(i, kk, 0)],
                            ),
                            4 => (
                                vec![cc(i, j, b(kk)), cc(i, kk, b(l)), cc(i, l, b(j))],
                                vec![cc(i, j, 0)],
                            ),
                            5 => (
                                vec![cc(i, j, b(kk)), cc(j, kk, b(l)), cc(kk, l, b(i)), cc(i, l, b(j))],
                                vec![cc(i, j, 0)],
                            ),
                            _ => unreachable!(),
                        };
                        let (a, cons) = (rel(m, &a), rel(m, &cons));
                        let schema = Schema::MoreCi(k);
                        out.push(ImplicationRule::new(a, cons, schema, false).expect("disjoint"));
                        out.push(ImplicationRule::new(a.dual(), cons.dual(), schema, true).expect("disjoint"));
                    }
                }
            }
        }
    }
    out
}

/// Parsed antecedent and consequent of appendix schema `k` (1-based).
pub fn appendix_pattern(k: u8) -> (Relation, Relation) {
    let (a, c) = APPENDIX_PATTERNS[(k - 1) as usize];
    (
        Relation::parse(a, 4).expect("valid pattern"),
        Relation::parse(c, 4).expect("valid pattern"),
    )
}

/// Instantiates the given schemata over `[m]`.
///
/// The four-index schemata and the appendix schemata are instantiated
/// together with their duals. Appendix schemata exist only for `m = 4`
/// (for `m = 3` they have no instances).
pub fn instantiate_schemata(m: usize, schemata: &[Schema]) -> Result<RuleSet> {
    let mut set = RuleSet::empty(m)?;
    let unique: BTreeSet<Schema> = schemata.iter().copied().collect();
    for schema in unique {
        match schema {
            Schema::C3 | Schema::C4 | Schema::C5 => set.extend(semigaussoid_rules(m, schema))?,
            Schema::MoreCi(k) => {
                if !(1..=5).contains(&k) {
                    return Err(Error::UnknownSchema(schema.name()));
                }
                set.extend(moreci_rules(m, k))?;
            }
            Schema::Ci(k) => {
                if !(1..=13).contains(&k) {
                    return Err(Error::UnknownSchema(schema.name()));
                }
                match m {
                    4 => {
                        let (a, c) = appendix_pattern(k);
                        set.add_pattern(schema, &a, &c, true)?;
                    }
                    3 => {}
                    _ => return Err(Error::SchemaGround { schema: schema.name(), m }),
                }
            }
        }
        set.schemata.insert(schema);
    }
    Ok(set)
}

/// Cached rule sets for the common schema groups.
pub fn semigaussoid_rule_set(m: usize) -> Result<&'static RuleSet> {
    static CACHE: [OnceLock<RuleSet>; 7] = [const { OnceLock::new() }; 7];
    crate::relation::check_ground(m)?;
    Ok(CACHE[m].get_or_init(|| instantiate_schemata(m, &Schema::semigaussoid()).expect("valid m")))
}

pub fn gaussoid_rule_set(m: usize) -> Result<&'static RuleSet> {
    static CACHE: [OnceLock<RuleSet>; 7] = [const { OnceLock::new() }; 7];
    crate::relation::check_ground(m)?;
    Ok(CACHE[m].get_or_init(|| instantiate_schemata(m, &Schema::gaussoid()).expect("valid m")))
}

/// All schemata over `[4]`, appendix duals included.
pub fn full_rule_set() -> &'static RuleSet {
    static CACHE: OnceLock<RuleSet> = OnceLock::new();
    CACHE.get_or_init(|| instantiate_schemata(4, &Schema::all()).expect("m = 4"))
}

fn check_same(l: &Relation, rules: &RuleSet) -> Result<()> {
    if l.ground() != rules.ground() {
        Err(Error::GroundMismatch(l.ground(), rules.ground()))
    } else {
        Ok(())
    }
}

pub fn is_closed_under(l: &Relation, rules: &RuleSet) -> Result<bool> {
    check_same(l, rules)?;
    Ok(rules.rules.iter().all(|r| r.is_satisfied_by(l)))
}

/// First rule whose antecedent is in `l` but whose consequent is not.
pub fn first_violation<'a>(l: &Relation, rules: &'a RuleSet) -> Result<Option<&'a ImplicationRule>> {
    check_same(l, rules)?;
    Ok(rules.rules.iter().find(|r| !r.is_satisfied_by(l)))
}

pub fn is_semigaussoid(l: &Relation) -> bool {
    let rules = semigaussoid_rule_set(l.ground()).expect("ground checked on construction");
    rules.rules.iter().all(|r| r.is_satisfied_by(l))
}

/// One rule application during a closure computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: usize,
    pub added: Relation,
}

pub fn closure(l: &Relation, rules: &RuleSet) -> Result<Relation> {
    closure_with_trace(l, rules).map(|(c, _)| c)
}

/// Least superset of `l` closed under `rules`, with the rule firings in order.
pub fn closure_with_trace(l: &Relation, rules: &RuleSet) -> Result<(Relation, Vec<Step>)> {
    check_same(l, rules)?;
    let mut cur = *l;
    let mut steps = Vec::new();
    let mut dirty = true;
    while dirty {
        dirty = false;
        for (idx, rule) in rules.rules.iter().enumerate() {
            if rule.antecedent.subset_of(&cur) && !rule.consequent.subset_of(&cur) {
                let added = rule.consequent.difference(&cur)?;
                cur.or_assign(&rule.consequent);
                steps.push(Step { rule: idx, added });
                dirty = true;
            }
        }
    }
    Ok((cur, steps))
}

/// Keeps only the firings needed to derive `target` from `start`.
pub fn extract_proof(start: &Relation, target: &Relation, trace: &[Step], rules: &RuleSet) -> Result<Vec<Step>> {
    check_same(start, rules)?;
    let mut needed = target.difference(start)?;
    let mut kept = Vec::new();
    for step in trace.iter().rev() {
        if needed.intersection(&step.added)?.is_empty() {
            continue;
        }
        needed = needed.difference(&step.added)?;
        let ante = rules.rules[step.rule].antecedent.difference(start)?;
        needed = needed.union(&ante)?;
        kept.push(step.clone());
    }
    if !needed.is_empty() {
        return Err(Error::Precondition(format!(
            "{{{needed}}} is not derived by the trace"
        )));
    }
    kept.reverse();
    Ok(kept)
}

/// Re-applies recorded firings, checking each antecedent before use.
pub fn replay(start: &Relation, steps: &[Step], rules: &RuleSet) -> Result<Relation> {
    check_same(start, rules)?;
    let mut cur = *start;
    for step in steps {
        let rule = rules
            .rules
            .get(step.rule)
            .ok_or_else(|| Error::Precondition(format!("rule index {} out of range", step.rule)))?;
        if !rule.antecedent.subset_of(&cur) {
            return Err(Error::Precondition(format!(
                "antecedent of {rule} not available at this step"
            )));
        }
        cur.or_assign(&rule.consequent);
    }
    Ok(cur)
}

/// An instance of weak transitivity: `premise ⊆ L` requires `left ⊆ L` or `right ⊆ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakTransitivity {
    pub premise: Relation,
    pub left: Relation,
    pub right: Relation,
}

impl WeakTransitivity {
    pub fn is_satisfied_by(&self, l: &Relation) -> bool {
        !self.premise.subset_of(l) || self.left.subset_of(l) || self.right.subset_of(l)
    }
}

impl fmt::Display for WeakTransitivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} => {{{}}} or {{{}}}", self.premise, self.left, self.right)
    }
}

/// All instances over `[m]`: `{ij|C, ij|kC} => {ik|C, ik|jC} or {jk|C, jk|iC}`.
pub fn weak_transitivity_instances(m: usize) -> Result<Vec<WeakTransitivity>> {
    crate::relation::check_ground(m)?;
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in 0..m {
                if k == i || k == j {
                    continue;
                }
                let ijk = (1u8 << i) | (1 << j) | (1 << k);
                for c in subsets_avoiding(m, ijk) {
                    out.push(WeakTransitivity {
                        premise: rel(m, &[couple(m, i, j, c), couple(m, i, j, c | 1 << k)]),
                        left: rel(m, &[couple(m, i, k, c), couple(m, i, k, c | 1 << j)]),
                        right: rel(m, &[couple(m, j, k, c), couple(m, j, k, c | 1 << i)]),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn cached_weak_transitivity(m: usize) -> &'static [WeakTransitivity] {
    static CACHE: [OnceLock<Vec<WeakTransitivity>>; 7] = [const { OnceLock::new() }; 7];
    CACHE[m].get_or_init(|| weak_transitivity_instances(m).expect("valid m"))
}

pub fn satisfies_weak_transitivity(l: &Relation) -> bool {
    cached_weak_transitivity(l.ground())
        .iter()
        .all(|w| w.is_satisfied_by(l))
}

/// Derivation of a target using rules and case splits on weak transitivity.
#[derive(Clone, Debug)]
pub enum ProofTree {
    /// The target follows by rule applications alone.
    Closure { steps: Vec<Step> },
    /// After `steps`, split on an instance and prove the target in both branches.
    Split {
        steps: Vec<Step>,
        instance: WeakTransitivity,
        left: Box<ProofTree>,
        right: Box<ProofTree>,
    },
}

impl ProofTree {
    /// Number of closure leaves.
    pub fn leaves(&self) -> usize {
        match self {
            ProofTree::Closure { .. } => 1,
            ProofTree::Split { left, right, .. } => left.leaves() + right.leaves(),
        }
    }

    /// Indented text rendering.
    pub fn render(&self, rules: &RuleSet) -> String {
        let mut out = String::new();
        self.render_into(rules, 0, &mut out);
        out
    }

    fn render_into(&self, rules: &RuleSet, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let steps = match self {
            ProofTree::Closure { steps } | ProofTree::Split { steps, .. } => steps,
        };
        for s in steps {
            let r = &rules.rules()[s.rule];
            out.push_str(&format!("{pad}{{{}}} => {{{}}} by {}\n", r.antecedent, s.added, r.label()));
        }
        if let ProofTree::Split {
            instance, left, right, ..
        } = self
        {
            out.push_str(&format!("{pad}weak transitivity on {{{}}}\n", instance.premise));
            out.push_str(&format!("{pad}case {{{}}}:\n", instance.left));
            left.render_into(rules, depth + 1, out);
            out.push_str(&format!("{pad}case {{{}}}:\n", instance.right));
            right.render_into(rules, depth + 1, out);
        }
    }
}

/// Tries to derive `target` from `l` using `rules` and weak transitivity.
///
/// Every relation closed under `rules` and weak transitivity that contains
/// `l` lies in one of the branches, so `None` means some such relation
/// contains `l` but not `target`.
pub fn entails_with_weak_transitivity(l: &Relation, target: &Relation, rules: &RuleSet) -> Result<Option<ProofTree>> {
    check_same(l, rules)?;
    check_same(target, rules)?;
    let wt = cached_weak_transitivity(l.ground());
    split_search(l, target, rules, wt)
}

fn split_search(
    l: &Relation,
    target: &Relation,
    rules: &RuleSet,
    wt: &[WeakTransitivity],
) -> Result<Option<ProofTree>> {
    let (cl, trace) = closure_with_trace(l, rules)?;
    if target.subset_of(&cl) {
        let steps = extract_proof(l, target, &trace, rules)?;
        return Ok(Some(ProofTree::Closure { steps }));
    }
    let Some(instance) = wt.iter().find(|w| !w.is_satisfied_by(&cl)) else {
        return Ok(None);
    };
    let with_left = cl.union(&instance.left)?;
    let Some(left) = split_search(&with_left, target, rules, wt)? else {
        return Ok(None);
    };
    let with_right = cl.union(&instance.right)?;
    let Some(right) = split_search(&with_right, target, rules, wt)? else {
        return Ok(None);
    };
    Ok(Some(ProofTree::Split {
        steps: trace,
        instance: instance.clone(),
        left: Box::new(left),
        right: Box::new(right),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Relation {
        Relation::parse(s, 4).unwrap()
    }

    #[test]
    fn instance_counts() {
        assert_eq!(instantiate_schemata(4, &[Schema::C3]).unwrap().len(), 24);
        assert_eq!(instantiate_schemata(4, &[Schema::C4]).unwrap().len(), 48);
        assert_eq!(instantiate_schemata(4, &[Schema::C5]).unwrap().len(), 24);
        assert_eq!(instantiate_schemata(3, &[Schema::C3]).unwrap().len(), 3);
    }

    #[test]
    fn c5_instance_on_three() {
        let rules = instantiate_schemata(3, &[Schema::C5]).unwrap();
        let a = Relation::parse("12|3,13|2", 3).unwrap();
        let c = Relation::parse("12,13", 3).unwrap();
        assert!(rules.rules().iter().any(|x| x.antecedent == a && x.consequent == c));
    }

    #[test]
    fn appendix_instance_present() {
        let rules = instantiate_schemata(4, &[Schema::Ci(3)]).unwrap();
        assert!(rules
            .rules()
            .iter()
            .any(|x| x.antecedent == r("14|2,14|3,14|23,23|14") && x.consequent == r("14")));
        assert!(rules.is_dual_closed());
        assert!(instantiate_schemata(5, &[Schema::Ci(3)]).is_err());
    }

    #[test]
    fn schema_names() {
        for s in Schema::all() {
            assert_eq!(Schema::parse(&s.name()).unwrap(), s);
        }
        assert_eq!(Schema::parse("cistart").unwrap(), Schema::Ci(1));
        assert!(Schema::parse("ci14").is_err());
    }

    #[test]
    fn closure_examples() {
        let rules = semigaussoid_rule_set(4).unwrap();
        assert_eq!(closure(&r("12,13|2"), rules).unwrap(), r("12,13,12|3,13|2"));
        assert_eq!(closure(&r(""), full_rule_set()).unwrap(), r(""));
        assert!(is_closed_under(&r("12,12|3"), rules).unwrap());
        let c4 = instantiate_schemata(4, &[Schema::C4]).unwrap();
        assert!(!is_closed_under(&r("12,13|2"), &c4).unwrap());
        let full = Relation::full(4).unwrap();
        assert!(is_closed_under(&full, full_rule_set()).unwrap());
    }

    #[test]
    fn proof_extraction_replays() {
        let start = r("23|4,23|14,24|1,34|1");
        let target = r("23,23|1,24|13,34|12");
        let rules = full_rule_set();
        let (cl, trace) = closure_with_trace(&start, rules).unwrap();
        assert!(target.is_subset(&cl).unwrap());
        let proof = extract_proof(&start, &target, &trace, rules).unwrap();
        let replayed = replay(&start, &proof, rules).unwrap();
        assert!(target.is_subset(&replayed).unwrap());
    }

    #[test]
    fn weak_transitivity_examples() {
        let m3 = |s| Relation::parse(s, 3).unwrap();
        assert!(!satisfies_weak_transitivity(&m3("12,12|3")));
        assert!(satisfies_weak_transitivity(&m3("")));
        assert!(satisfies_weak_transitivity(&m3("12,12|3,13,13|2")));
    }
}
