//! Smoothness and singularities of correlation varieties `V_cor(L)` on small ground sets.
//!
//! Jacobians are taken with respect to the off-diagonal entries of a unit
//! diagonal matrix, using the almost-principal minors of the couples of `L`
//! as equations.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::datasets::Registry;
use crate::error::{Error, Result};
use crate::linalg::{almost_principal_minor, int, rat, relation_of_matrix, Rational, RationalMatrix};
use crate::poly::{ci_ideal_generators, ci_polynomial, certify_membership, min_form, point_of, vars_of, Polynomial};
use crate::relation::{Couple, Relation};
use crate::report::Report;

/// Ids of the twelve singular representable relations on four variables.
pub const SINGULAR_IDS: [usize; 12] = [14, 15, 20, 24, 28, 29, 30, 32, 36, 37, 46, 51];
/// Singular relations whose only singular point is the identity.
pub const IDENTITY_SINGULAR_IDS: [usize; 6] = [14, 20, 30, 36, 46, 51];
/// Singular relations that are unions of smooth components.
pub const UNION_IDS: [usize; 4] = [15, 24, 28, 37];
/// Relations with a tangent cone description.
pub const CONE_IDS: [usize; 8] = [14, 20, 29, 30, 32, 36, 46, 51];

/// Whether all minors of `l` vanish at `r`.
pub fn vanishes_at(l: &Relation, r: &RationalMatrix) -> Result<bool> {
    for c in l.iter() {
        if !almost_principal_minor(r, &c)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in `V_cor(L)`: unit diagonal, positive definite, all minors zero.
pub fn in_correlation_variety(l: &Relation, r: &RationalMatrix) -> Result<bool> {
    if r.rows() != l.ground() || !r.is_square() {
        return Err(Error::GroundMismatch(r.rows(), l.ground()));
    }
    Ok(r.is_symmetric() && r.has_unit_diagonal() && r.is_positive_definite()? && vanishes_at(l, r)?)
}

/// Gradients of the generators of `I_L`, precomputed for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Jacobian {
    ground: usize,
    grads: Vec<Vec<Polynomial>>,
}

impl Jacobian {
    pub fn new(l: &Relation) -> Self {
        Self::of(l.ground(), &ci_ideal_generators(l))
    }

    pub fn of(ground: usize, fs: &[Polynomial]) -> Self {
        let vars = vars_of(ground);
        let grads = fs
            .iter()
            .map(|f| vars.iter().map(|&v| f.derivative(v)).collect())
            .collect();
        Jacobian { ground, grads }
    }

    pub fn at(&self, r: &RationalMatrix) -> Result<RationalMatrix> {
        if r.rows() != self.ground {
            return Err(Error::GroundMismatch(r.rows(), self.ground));
        }
        let point = point_of(r)?;
        let cols = self.ground * (self.ground - 1) / 2;
        if self.grads.is_empty() {
            return Ok(RationalMatrix::zeros(0, cols));
        }
        RationalMatrix::from_rows(
            self.grads
                .iter()
                .map(|row| row.iter().map(|g| g.eval(&point)).collect())
                .collect(),
        )
    }

    pub fn rank_at(&self, r: &RationalMatrix) -> Result<usize> {
        Ok(self.at(r)?.rank())
    }
}

pub fn jacobian_rank(l: &Relation, r: &RationalMatrix) -> Result<usize> {
    Jacobian::new(l).rank_at(r)
}

/// Jacobian rank of the minors of `L` at a covariance matrix, over all
/// entries including the diagonal.
///
/// Each minor is at most quadratic in a single symmetric entry, so central
/// differences give exact derivatives. At a covariance matrix this rank
/// equals the unit-diagonal Jacobian rank at its correlation matrix: the
/// diagonal scaling action preserves every minor up to a nonzero factor.
pub fn covariance_jacobian_rank(l: &Relation, sigma: &RationalMatrix) -> Result<usize> {
    let m = l.ground();
    if sigma.rows() != m || !sigma.is_square() {
        return Err(Error::GroundMismatch(sigma.rows(), m));
    }
    let half = rat(1, 2);
    let mut rows = Vec::new();
    for c in l.iter() {
        let mut row = Vec::new();
        for a in 0..m {
            for b in a..m {
                let mut plus = sigma.clone();
                plus.set_sym(a, b, &sigma[(a, b)] + int(1));
                let mut minus = sigma.clone();
                minus.set_sym(a, b, &sigma[(a, b)] - int(1));
                row.push((almost_principal_minor(&plus, &c)? - almost_principal_minor(&minus, &c)?) * &half);
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(RationalMatrix::from_rows(rows)?.rank())
}

type Entries = Vec<(usize, usize)>;

/// Off-diagonal pairs in the minor of `c`, and those in which it is affine.
fn couple_entries(c: &Couple) -> (Entries, Entries) {
    let (i, j) = c.pair();
    let cond = c.cond_indices();
    let mut rows = cond.clone();
    rows.push(i);
    let mut cols = cond.clone();
    cols.push(j);
    let mut all = Vec::new();
    for &a in &rows {
        for &b in &cols {
            if a != b {
                let p = (a.min(b), a.max(b));
                if !all.contains(&p) {
                    all.push(p);
                }
            }
        }
    }
    let mut affine = vec![(i.min(j), i.max(j))];
    for &k in &cond {
        affine.push((i.min(k), i.max(k)));
        affine.push((j.min(k), j.max(k)));
    }
    (all, affine)
}

/// Value of entry `(a, b)` making the minor of `c` vanish, if the minor
/// actually depends on it.
fn solve_affine(r: &RationalMatrix, c: &Couple, a: usize, b: usize) -> Result<Option<Rational>> {
    let mut probe = r.clone();
    probe.set_sym(a, b, Rational::zero());
    let f0 = almost_principal_minor(&probe, c)?;
    probe.set_sym(a, b, Rational::one());
    let slope = almost_principal_minor(&probe, c)? - &f0;
    Ok((!slope.is_zero()).then(|| -f0 / slope))
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let q = rng.gen_range(2..=6i64);
    rat(rng.gen_range(-(q - 1)..=(q - 1)), q)
}

fn nonzero_small<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let v = small_rational(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// One attempt at an exact point of `V_cor(L)`.
///
/// Couples are visited in random order, half the time sorted by order; each one fixes the entries of its
/// minor, solving for one entry in which the minor is affine. Free entries are
/// small random rationals, or perturbations of `base` by multiples of 1/64.
pub fn sample_variety_point<R: Rng>(l: &Relation, rng: &mut R, base: Option<&RationalMatrix>) -> Option<RationalMatrix> {
    let m = l.ground();
    let mut assigned: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    let free = |rng: &mut R, (a, b): (usize, usize)| match base {
        Some(w) => &w[(a, b)] + rat(rng.gen_range(-4..=4), 64),
        None => small_rational(rng),
    };
    let mut couples: Vec<Couple> = l.iter().collect();
    couples.shuffle(rng);
    // half the attempts put small minors first, pinning single entries early
    if rng.gen_bool(0.5) {
        couples.sort_by_key(|c| c.order());
    }
    for c in &couples {
        let (all, affine) = couple_entries(c);
        let open: Vec<(usize, usize)> = all.iter().copied().filter(|p| !assigned.contains_key(p)).collect();
        if open.is_empty() {
            continue;
        }
        let cands: Vec<(usize, usize)> = affine.into_iter().filter(|p| open.contains(p)).collect();
        let &pivot = cands.choose(rng)?;
        for &p in &open {
            if p != pivot {
                let v = free(rng, p);
                assigned.insert(p, v);
            }
        }
        let mut r = RationalMatrix::identity(m);
        for (&(a, b), v) in &assigned {
            r.set_sym(a, b, v.clone());
        }
        let v = match solve_affine(&r, c, pivot.0, pivot.1).ok()? {
            Some(v) => v,
            // the minor does not depend on the pivot here; keep it free if it already vanishes
            None if almost_principal_minor(&r, c).ok()?.is_zero() => free(rng, pivot),
            None => return None,
        };
        assigned.insert(pivot, v);
    }
    let mut r = RationalMatrix::identity(m);
    for a in 0..m {
        for b in a + 1..m {
            let v = match assigned.get(&(a, b)) {
                Some(v) => v.clone(),
                None => free(rng, (a, b)),
            };
            r.set_sym(a, b, v);
        }
    }
    in_correlation_variety(l, &r).ok()?.then_some(r)
}

/// Repeats [`sample_variety_point`] until `accept` holds for the point's relation.
pub fn sample_accepted_point<R: Rng>(
    l: &Relation,
    rng: &mut R,
    base: Option<&RationalMatrix>,
    attempts: usize,
    accept: impl Fn(&Relation) -> bool,
) -> Option<RationalMatrix> {
    for _ in 0..attempts {
        if let Some(r) = sample_variety_point(l, rng, base) {
            if accept(&relation_of_matrix(&r).ok()?) {
                return Some(r);
            }
        }
    }
    None
}

/// A relation `{ij|C1, ij|C2}` with a repeated pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepeatedPair {
    pub ground: usize,
    pub i: usize,
    pub j: usize,
    pub c1: u8,
    pub c2: u8,
}

fn bits(set: u8) -> Vec<usize> {
    (0..8).filter(|k| set & (1 << k) != 0).collect()
}

impl RepeatedPair {
    pub fn new(ground: usize, i: usize, j: usize, c1: u8, c2: u8) -> Result<Self> {
        let first = Couple::new(ground, i, j, c1)?;
        let second = Couple::new(ground, i, j, c2)?;
        if first == second {
            return Err(Error::Precondition("the two conditioning sets coincide".into()));
        }
        let (i, j) = first.pair();
        Ok(RepeatedPair { ground, i, j, c1, c2 })
    }

    /// The two couples of a relation sharing one pair.
    pub fn from_relation(l: &Relation) -> Result<Self> {
        let cs: Vec<Couple> = l.iter().collect();
        if cs.len() != 2 || cs[0].pair() != cs[1].pair() {
            return Err(Error::Precondition(format!("{l} is not of the form {{ij|C1, ij|C2}}")));
        }
        let (i, j) = cs[0].pair();
        Self::new(l.ground(), i, j, cs[0].cond(), cs[1].cond())
    }

    pub fn couples(&self) -> [Couple; 2] {
        [
            Couple::new(self.ground, self.i, self.j, self.c1).expect("validated"),
            Couple::new(self.ground, self.i, self.j, self.c2).expect("validated"),
        ]
    }

    pub fn relation(&self) -> Relation {
        Relation::from_couples(self.ground, self.couples()).expect("same ground")
    }

    /// `(F, C, D)` with `F = C1 ∩ C2`, `C = C1 ∖ C2`, `D = C2 ∖ C1`.
    pub fn parts(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        (bits(self.c1 & self.c2), bits(self.c1 & !self.c2), bits(self.c2 & !self.c1))
    }
}

/// Schur complement `R_{A,B} - R_{A,F} R_{F,F}^{-1} R_{F,B}`.
pub fn schur_complement(r: &RationalMatrix, a: &[usize], b: &[usize], f: &[usize]) -> Result<RationalMatrix> {
    let rab = r.submatrix(a, b);
    if f.is_empty() || a.is_empty() || b.is_empty() {
        return Ok(rab);
    }
    let correction = r.submatrix(a, f).mul(&r.submatrix(f, f).inverse()?)?.mul(&r.submatrix(f, b))?;
    let mut out = rab;
    for x in 0..a.len() {
        for y in 0..b.len() {
            let v = &out[(x, y)] - &correction[(x, y)];
            out.set(x, y, v);
        }
    }
    Ok(out)
}

fn is_zero_matrix(m: &RationalMatrix) -> bool {
    (0..m.rows()).all(|x| (0..m.cols()).all(|y| m[(x, y)].is_zero()))
}

/// Whether `R` lies on the locus where the Jacobian of `{ij|C1, ij|C2}` has rank one:
/// the five Schur complements `r_{ij|F}`, `R_{C,i|F}`, `R_{C,j|F}`, `R_{D,i|F}`,
/// `R_{D,j|F}` all vanish.
pub fn rank_drop_criterion(cfg: &RepeatedPair, r: &RationalMatrix) -> Result<bool> {
    if !in_correlation_variety(&cfg.relation(), r)? {
        return Err(Error::NotOnVariety(format!("matrix is not in V_cor({})", cfg.relation())));
    }
    let (f, c, d) = cfg.parts();
    let (i, j) = ([cfg.i], [cfg.j]);
    let blocks: [(&[usize], &[usize]); 5] = [(&i, &j), (&c, &i), (&c, &j), (&d, &i), (&d, &j)];
    for (a, b) in blocks {
        if !is_zero_matrix(&schur_complement(r, a, b, &f)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact point of `V_cor({ij|C1, ij|C2})`; with `on_drop_locus` the five
/// Schur complements are forced to vanish, otherwise the point is generic.
pub fn sample_repeated_pair_point<R: Rng>(cfg: &RepeatedPair, rng: &mut R, on_drop_locus: bool) -> RationalMatrix {
    let m = cfg.ground;
    let (f, c, d) = cfg.parts();
    let [k1, k2] = cfg.couples();
    let mut scale = int(1);
    for attempt in 0usize.. {
        if attempt > 0 && attempt % 16 == 0 {
            scale *= rat(1, 2);
        }
        let mut r = RationalMatrix::identity(m);
        for a in 0..m {
            for b in a + 1..m {
                r.set_sym(a, b, small_rational(rng) * &scale);
            }
        }
        let ok = if on_drop_locus {
            force_drop_locus(&mut r, cfg, &f, &c, &d)
        } else if let Some(&x) = d.first() {
            solve_pair_then(&mut r, &k1, &k2, (cfg.i, cfg.j), (cfg.i, x))
        } else {
            solve_pair_then(&mut r, &k2, &k1, (cfg.i, cfg.j), (cfg.i, c[0]))
        };
        if ok && in_correlation_variety(&cfg.relation(), &r).unwrap_or(false) {
            return r;
        }
    }
    unreachable!()
}

fn set_entry(r: &mut RationalMatrix, (a, b): (usize, usize), v: Rational) {
    r.set_sym(a, b, v);
}

/// Solves `first` for the pair entry, then `second` for `other`.
fn solve_pair_then(r: &mut RationalMatrix, first: &Couple, second: &Couple, pair: (usize, usize), other: (usize, usize)) -> bool {
    let Ok(Some(v)) = solve_affine(r, first, pair.0, pair.1) else {
        return false;
    };
    set_entry(r, pair, v);
    let Ok(Some(w)) = solve_affine(r, second, other.0, other.1) else {
        return false;
    };
    set_entry(r, other, w);
    true
}

fn force_drop_locus(r: &mut RationalMatrix, cfg: &RepeatedPair, f: &[usize], c: &[usize], d: &[usize]) -> bool {
    let Ok(rff_inv) = r.submatrix(f, f).inverse() else {
        return false;
    };
    // regression value R_{x,F} R_{F,F}^{-1} R_{F,y}
    let fitted = |r: &RationalMatrix, x: usize, y: usize| -> Rational {
        if f.is_empty() {
            return Rational::zero();
        }
        let left = r.submatrix(&[x], f).mul(&rff_inv).expect("sizes match");
        left.mul(&r.submatrix(f, &[y])).expect("sizes match")[(0, 0)].clone()
    };
    let v = fitted(r, cfg.i, cfg.j);
    r.set_sym(cfg.i, cfg.j, v);
    for &x in c.iter().chain(d) {
        for y in [cfg.i, cfg.j] {
            let v = fitted(r, x, y);
            r.set_sym(x, y, v);
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    SingularConfirmed,
    /// No rank drop found; evidence of smoothness, not a proof.
    Nonsingular,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::SingularConfirmed => "singular_confirmed",
            Verdict::Nonsingular => "nonsingular",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub relation_id: usize,
    pub point: RationalMatrix,
    pub jacobian_rank: usize,
    pub expected_max_rank: usize,
    /// Number of listed irreducible components through the point, for unions of components.
    pub components_through_point: Option<usize>,
    pub verdict: Verdict,
}

/// An irreducible component of `V_cor(L)` for the four reducible singular relations.
#[derive(Clone, Debug)]
pub struct Component {
    pub name: &'static str,
    pub generators: Vec<Polynomial>,
    /// Whether generic points of this component represent `L`.
    pub represents: bool,
    /// A rational point on the component, as `(variable, value)` pairs; other entries zero.
    pub sample: Vec<(&'static str, Rational)>,
}

fn polys(texts: &[&str]) -> Vec<Polynomial> {
    texts.iter().map(|t| Polynomial::parse(t).expect("static polynomial")).collect()
}

fn component(name: &'static str, gens: &[&str], represents: bool, sample: Vec<(&'static str, Rational)>) -> Component {
    Component {
        name,
        generators: polys(gens),
        represents,
        sample,
    }
}

/// Prime components of `I_L` for ids 15, 24, 28 and 37.
pub fn components(id: usize) -> Result<Vec<Component>> {
    let q = |n: i64, d: i64| rat(n, d);
    Ok(match id {
        15 => vec![
            component("Q1", &["r12", "r14", "r23", "r34"], false, vec![("r13", q(1, 2)), ("r24", q(1, 3))]),
            component("Q2", &["r13", "r14", "r23", "r24"], false, vec![("r12", q(1, 2)), ("r34", q(1, 3))]),
            component(
                "Q3",
                &["r14", "r23", "r12 + r34", "r13 - r24"],
                true,
                vec![("r12", q(1, 2)), ("r34", q(-1, 2)), ("r13", q(1, 3)), ("r24", q(1, 3))],
            ),
            component(
                "Q4",
                &["r14", "r23", "r12 - r34", "r13 + r24"],
                true,
                vec![("r12", q(1, 2)), ("r34", q(1, 2)), ("r13", q(1, 3)), ("r24", q(-1, 3))],
            ),
        ],
        24 => vec![
            component(
                "Q1",
                &["r12", "r23*r34 - r24", "r13*r14*r34 - r14^2 - r34^2 + 1"],
                true,
                vec![("r14", q(3, 4)), ("r34", q(3, 4)), ("r13", q(2, 9)), ("r23", q(1, 3)), ("r24", q(1, 4))],
            ),
            component("Q2", &["r12", "r23", "r24"], false, vec![("r13", q(1, 2)), ("r14", q(1, 3)), ("r34", q(1, 4))]),
        ],
        28 => vec![
            component(
                "Q1",
                &["r14", "r12*r23 - r13", "r23*r34 - r24", "r12^2 + r34^2 - 1"],
                true,
                vec![("r12", q(3, 5)), ("r34", q(4, 5)), ("r23", q(1, 4)), ("r13", q(3, 20)), ("r24", q(1, 5))],
            ),
            component("Q2", &["r13", "r14", "r23", "r24"], false, vec![("r12", q(1, 2)), ("r34", q(1, 3))]),
        ],
        37 => vec![
            component("Q1", &["r12", "r13", "r24", "r34"], false, vec![("r14", q(1, 2)), ("r23", q(1, 3))]),
            component(
                "Q2",
                &["r12 - r34", "r13 - r24", "r14 - r23", "r23*r24 - r34"],
                true,
                vec![("r23", q(1, 2)), ("r24", q(1, 3)), ("r34", q(1, 6)), ("r12", q(1, 6)), ("r13", q(1, 3)), ("r14", q(1, 2))],
            ),
            component("Q3", &["r12", "r14", "r23", "r34"], false, vec![("r13", q(1, 2)), ("r24", q(1, 3))]),
            component(
                "Q4",
                &["r12 + r34", "r13 + r24", "r14 + r23", "r23*r24 - r34"],
                true,
                vec![("r23", q(1, 2)), ("r24", q(1, 3)), ("r34", q(1, 6)), ("r12", q(-1, 6)), ("r13", q(-1, 3)), ("r14", q(-1, 2))],
            ),
        ],
        _ => return Err(Error::UnsupportedRelation(id)),
    })
}

/// Listed components of the singular locus for ids 15, 24, 28 and 37.
pub fn singular_locus(id: usize) -> Result<Vec<Vec<Polynomial>>> {
    let lists: &[&[&str]] = match id {
        15 => &[
            &["r12", "r14", "r23", "r34", "r13 - r24"],
            &["r12", "r14", "r23", "r34", "r13 + r24"],
            &["r13", "r14", "r23", "r24", "r12 - r34"],
            &["r13", "r14", "r23", "r24", "r12 + r34"],
        ],
        24 => &[&["r12", "r23", "r24", "r13*r14*r34 - r14^2 - r34^2 + 1"]],
        28 => &[&["r13", "r14", "r23", "r24", "r12^2 + r34^2 - 1"]],
        37 => &[
            &["r12", "r13", "r24", "r34", "r14 - r23"],
            &["r12", "r13", "r24", "r34", "r14 + r23"],
            &["r12", "r14", "r23", "r34", "r13 - r24"],
            &["r12", "r14", "r23", "r34", "r13 + r24"],
        ],
        _ => return Err(Error::UnsupportedRelation(id)),
    };
    Ok(lists.iter().map(|l| polys(l)).collect())
}

/// Matrix on `[4]` from `(variable, value)` pairs.
pub fn matrix_from_entries(entries: &[(&str, Rational)]) -> Result<RationalMatrix> {
    let mut r = RationalMatrix::identity(4);
    for (name, v) in entries {
        let p = Polynomial::parse(name)?;
        let vars = p.variables();
        if vars.len() != 1 || p.num_terms() != 1 {
            return Err(Error::Parse(format!("`{name}` is not a variable")));
        }
        let (a, b) = crate::poly::var_pair(vars[0]);
        r.set_sym(a, b, v.clone());
    }
    Ok(r)
}

/// Rational points on each listed singular locus component (ids 15, 24, 28, 37),
/// plus the identity, line and identity points for the other eight.
pub fn singular_points(id: usize) -> Result<Vec<RationalMatrix>> {
    let q = |n: i64, d: i64| rat(n, d);
    let e = |entries: Vec<(&str, Rational)>| matrix_from_entries(&entries).expect("static entries");
    Ok(match id {
        14 | 20 | 30 | 36 | 46 | 51 => vec![RationalMatrix::identity(4)],
        29 | 32 => {
            let var = if id == 29 { "r14" } else { "r34" };
            [q(-1, 2), q(-1, 3), q(0, 1), q(1, 4), q(2, 3)]
                .into_iter()
                .map(|v| e(vec![(var, v)]))
                .collect()
        }
        15 => vec![
            e(vec![("r13", q(1, 2)), ("r24", q(1, 2))]),
            e(vec![("r13", q(1, 2)), ("r24", q(-1, 2))]),
            e(vec![("r12", q(1, 3)), ("r34", q(1, 3))]),
            e(vec![("r12", q(1, 3)), ("r34", q(-1, 3))]),
        ],
        37 => vec![
            e(vec![("r14", q(1, 2)), ("r23", q(1, 2))]),
            e(vec![("r14", q(1, 2)), ("r23", q(-1, 2))]),
            e(vec![("r13", q(1, 3)), ("r24", q(1, 3))]),
            e(vec![("r13", q(1, 3)), ("r24", q(-1, 3))]),
        ],
        24 => vec![
            e(vec![("r14", q(3, 4)), ("r34", q(3, 4)), ("r13", q(2, 9))]),
            e(vec![("r14", q(4, 5)), ("r34", q(4, 5)), ("r13", q(7, 16))]),
            e(vec![("r14", q(3, 4)), ("r34", q(-3, 4)), ("r13", q(-2, 9))]),
        ],
        28 => [(3, 4, 5), (4, 3, 5), (-3, 4, 5), (5, 12, 13), (12, -5, 13)]
            .into_iter()
            .map(|(a, b, c)| e(vec![("r12", q(a, c)), ("r34", q(b, c))]))
            .collect(),
        _ => return Err(Error::UnsupportedRelation(id)),
    })
}

fn vanish_all(gens: &[Polynomial], r: &RationalMatrix) -> Result<bool> {
    let p = point_of(r)?;
    Ok(gens.iter().all(|g| g.eval(&p).is_zero()))
}

/// Rank comparison at a point of `V_cor(L_id)` against the shipped maximal rank.
pub fn verify_singular_point(reg: &Registry, id: usize, r0: &RationalMatrix) -> Result<SingularityReport> {
    let l = reg.relation(id)?;
    let expected = reg.expected_rank(id)?;
    if !in_correlation_variety(l, r0)? {
        return Err(Error::NotOnVariety(format!("point is not in V_cor(L{id})")));
    }
    let rank = jacobian_rank(l, r0)?;
    let through = if UNION_IDS.contains(&id) {
        let mut k = 0;
        for comp in components(id)? {
            if vanish_all(&comp.generators, r0)? {
                k += 1;
            }
        }
        Some(k)
    } else {
        None
    };
    let verdict = match (rank < expected, through) {
        (false, _) => Verdict::Nonsingular,
        (true, Some(k)) if k < 2 => Verdict::Inconclusive,
        (true, _) => Verdict::SingularConfirmed,
    };
    Ok(SingularityReport {
        relation_id: id,
        point: r0.clone(),
        jacobian_rank: rank,
        expected_max_rank: expected,
        components_through_point: through,
        verdict,
    })
}

/// Full Jacobian rank at the witness and at `perturbed` variety points near it.
///
/// Points come from the sampler on `V_cor(L)` near the witness. When it
/// stalls (the minors are coupled with no triangular solving order), the
/// remaining points are inverses of points of `V_cor(L^d)` near the dual
/// witness, checked with [`covariance_jacobian_rank`]. If the expected rank
/// equals the number of entries, the witness is an isolated point and there
/// is nothing to perturb.
pub fn smoothness_evidence<R: Rng>(reg: &Registry, id: usize, perturbed: usize, rng: &mut R) -> Result<Report> {
    let l = reg.relation(id)?;
    let w = reg.witness(id)?;
    let expected = reg.expected_rank(id)?;
    let jac = Jacobian::new(l);
    let mut report = Report::new();
    let rank = jac.rank_at(w)?;
    report.check(rank == expected, format!("smooth.L{id}.witness"), format!("rank {rank} expected {expected}"));
    let entries = l.ground() * (l.ground() - 1) / 2;
    if expected == entries {
        report.skip(format!("smooth.L{id}.perturbed"), "variety is finite near the witness");
        return Ok(report);
    }
    let mut found = 0;
    for _ in 0..perturbed * 50 {
        if found == perturbed {
            break;
        }
        let Some(r) = sample_variety_point(l, rng, Some(w)) else { continue };
        found += 1;
        let rank = jac.rank_at(&r)?;
        report.check(rank == expected, format!("smooth.L{id}.point{found}"), format!("rank {rank} expected {expected}"));
    }
    if found < perturbed {
        let rec = reg.record(id)?;
        let dual = l.dual();
        let base = reg.witness(rec.dual_id)?.permuted(&rec.dual_perm.inverse())?;
        for _ in 0..perturbed * 200 {
            if found == perturbed {
                break;
            }
            let Some(r) = sample_variety_point(&dual, rng, Some(&base)) else { continue };
            let sigma = r.inverse()?;
            found += 1;
            let rank = covariance_jacobian_rank(l, &sigma)?;
            report.check(rank == expected, format!("smooth.L{id}.point{found}"), format!("rank {rank} expected {expected} (via dual)"));
        }
    }
    if found < perturbed {
        report.check(false, format!("smooth.L{id}.sampling"), format!("only {found} of {perturbed} perturbed points found"));
    }
    Ok(report)
}

/// Local cone of `V_cor(L_id)` at a singular point.
#[derive(Clone, Debug)]
pub struct ConeCheck {
    pub relation_id: usize,
    pub base_point: RationalMatrix,
    pub listed_generators: Vec<Polynomial>,
    pub derived_min_forms: Vec<Polynomial>,
    pub mutual_reduction_ok: bool,
    /// Per listed generator: whether its certificate's min form is a nonzero multiple of it.
    pub certificates_ok: Vec<bool>,
}

impl ConeCheck {
    pub fn passed(&self) -> bool {
        self.mutual_reduction_ok && self.certificates_ok.iter().all(|&b| b)
    }
}

/// Value of the base-point parameter of `R0` for the cone family of `id`.
fn cone_parameter(reg: &Registry, id: usize, r0: &RationalMatrix) -> Result<Rational> {
    let cone = reg.cone(id)?;
    let mut rho = Rational::zero();
    for a in 0..4 {
        for b in a + 1..4 {
            let v = &r0[(a, b)];
            if cone.base_var == Some((a, b)) {
                rho = v.clone();
            } else if !v.is_zero() {
                return Err(Error::Precondition(format!("R0 is not a listed singular point of L{id}")));
            }
        }
    }
    Ok(rho)
}

fn is_scalar_multiple(a: &Polynomial, b: &Polynomial) -> bool {
    match (a.leading(), b.leading()) {
        (Some((ma, ca)), Some((mb, cb))) => ma == mb && a.scale(&(cb / ca)) == *b,
        _ => false,
    }
}

/// Min forms of the `I_L` generators against the shipped cone generators, and the
/// shipped certificates exhibiting each cone generator as a min form.
pub fn tangent_cone_check(reg: &Registry, id: usize, r0: &RationalMatrix) -> Result<ConeCheck> {
    if !CONE_IDS.contains(&id) {
        return Err(Error::UnsupportedRelation(id));
    }
    let l = reg.relation(id)?;
    if !in_correlation_variety(l, r0)? {
        return Err(Error::NotOnVariety(format!("point is not in V_cor(L{id})")));
    }
    let rho = cone_parameter(reg, id, r0)?;
    let (listed, certs) = reg.cone(id)?.instantiate(&rho)?;
    let gens = ci_ideal_generators(l);
    let derived = gens.iter().map(|f| min_form(f, r0)).collect::<Result<Vec<_>>>()?;
    let mutual = derived.iter().all(|f| certify_membership(f, &listed).is_certified());
    let mut certificates_ok = Vec::new();
    for (g, cofactors) in listed.iter().zip(&certs) {
        let mut combo = Polynomial::zero();
        for (h, f) in cofactors.iter().zip(&gens) {
            combo = &combo + &h.try_mul(f)?;
        }
        let ok = cofactors.len() == gens.len() && !combo.is_zero() && is_scalar_multiple(&min_form(&combo, r0)?, g);
        certificates_ok.push(ok);
    }
    Ok(ConeCheck {
        relation_id: id,
        base_point: r0.clone(),
        listed_generators: listed,
        derived_min_forms: derived,
        mutual_reduction_ok: mutual,
        certificates_ok,
    })
}

/// A tangent direction `(t12, t13, t14, t23, t24, t34)`.
pub type Direction = [Rational; 6];

fn direction_point(t: &Direction) -> [Rational; crate::poly::NVARS] {
    let mut p: [Rational; crate::poly::NVARS] = std::array::from_fn(|_| Rational::zero());
    for (k, v) in vars_of(4).into_iter().enumerate() {
        p[v] = t[k].clone();
    }
    p
}

/// Whether `t` lies in the cone given by `gens` (in shifted coordinates).
pub fn direction_in_cone(t: &Direction, gens: &[Polynomial]) -> bool {
    let p = direction_point(t);
    gens.iter().all(|g| g.eval(&p).is_zero())
}

/// Random direction in the cone of `id` at the base point with parameter `rho`,
/// chosen so that the sequence of [`tangent_sequence_point`] is defined.
pub fn random_cone_direction<R: Rng>(id: usize, rho: &Rational, rng: &mut R) -> Result<Direction> {
    loop {
        let mut t: Direction = std::array::from_fn(|_| nonzero_small(rng) * int(2));
        let [t12, t13, t14, t23, t24, t34] = &mut t;
        match id {
            46 | 14 => {
                *t14 = Rational::zero();
                *t23 = Rational::zero();
                *t34 = -(&*t12 * &*t24) / &*t13;
            }
            51 | 20 => {
                *t14 = Rational::zero();
                *t23 = Rational::zero();
                *t34 = (&*t12 * &*t24) / &*t13;
            }
            30 => {
                *t14 = Rational::zero();
                *t23 = Rational::zero();
                *t13 = -(&*t24 * &*t34) / &*t12;
            }
            36 => {
                *t12 = Rational::zero();
                *t34 = Rational::zero();
                *t24 = (&*t13 * &*t23) / &*t14;
            }
            32 => {
                *t12 = Rational::zero();
                *t24 = (&*t13 * &*t23) / &*t14;
            }
            29 => {
                *t23 = Rational::zero();
                let den = rho * &*t12 - &*t24;
                if den.is_zero() {
                    continue;
                }
                *t34 = &*t13 * (&*t12 - rho * &*t24) / den;
            }
            _ => return Err(Error::UnsupportedRelation(id)),
        }
        return Ok(t);
    }
}

/// Whether sequence points for `id` are covariance matrices (not unit diagonal).
pub fn sequence_is_covariance(id: usize) -> bool {
    id == 14
}

/// The `n`-th point of an explicit curve in `V(L_id)` through the base point
/// with tangent direction `t`.
///
/// For id 29 this is the curve `r_n` of the tangent cone argument; the other
/// relations use analogous rational curves. For id 14 the point is the inverse
/// of the id-46 curve with direction `-t` (a covariance matrix in `V_pd(L14)`).
pub fn tangent_sequence_point(id: usize, rho: &Rational, t: &Direction, n: u64) -> Result<RationalMatrix> {
    let nn = Rational::from_integer(n.into());
    let s = |k: usize| &t[k] / &nn;
    let [t12, t13, t14, _t23, t24, _t34] = t;
    let zero = Rational::zero;
    let div = |a: Rational, b: Rational| -> Result<Rational> {
        if b.is_zero() {
            Err(Error::Precondition(format!("sequence undefined at n = {n}")))
        } else {
            Ok(a / b)
        }
    };
    // entries in order r12, r13, r14, r23, r24, r34
    let e: [Rational; 6] = match id {
        46 => {
            let (r12, r13, r24) = (s(0), s(1), s(4));
            let r34 = div(-(&r12 * &r24), r13.clone())?;
            [r12, r13, zero(), zero(), r24, r34]
        }
        14 => {
            let neg: Direction = std::array::from_fn(|k| -t[k].clone());
            let inner = tangent_sequence_point(46, rho, &neg, n)?;
            return inner.inverse();
        }
        51 | 20 => {
            let (r12, r13, r24) = (s(0), s(1), s(4));
            let r34 = div(&r12 * &r24, r13.clone())?;
            let r14 = &r12 * &r24;
            let r23 = if id == 20 {
                let num = &r12 * &r13 - &r12 * &r14 * &r34 - &r13 * &r14 * &r24 + &r24 * &r34;
                div(num, Rational::one() - &r14 * &r14)?
            } else {
                zero()
            };
            [r12, r13, r14, r23, r24, r34]
        }
        30 => {
            let (r12, r24, r34) = (s(0), s(4), s(5));
            let r14 = &r12 * &r24;
            let r13 = div(&r34 * (&r24 - &r12 * &r14), &r14 * &r24 - &r12)?;
            [r12, r13, r14, zero(), r24, r34]
        }
        36 | 32 => {
            let (r13, r23, r14) = (s(1), s(3), s(2));
            let r24 = div(&r13 * &r23, r14.clone())?;
            let r12 = &r13 * &r23;
            let r34 = if id == 36 { &r13 * &r14 } else { rho + s(5) };
            [r12, r13, r14, r23, r24, r34]
        }
        29 => {
            let num = &nn * t13 * (t12 - rho * t24) - t13 * t14 * t24;
            let den = &nn * &nn * (rho * t12 - t24) + &nn * t12 * t14;
            let r34 = div(num, den)?;
            [s(0), s(1), rho + s(2), zero(), s(4), r34]
        }
        _ => return Err(Error::UnsupportedRelation(id)),
    };
    RationalMatrix::correlation(4, &e)
}

/// Base point of the cone family of `id` with parameter `rho`.
pub fn cone_base_point(id: usize, rho: &Rational) -> RationalMatrix {
    let mut r = RationalMatrix::identity(4);
    match id {
        29 => r.set_sym(0, 3, rho.clone()),
        32 => r.set_sym(2, 3, rho.clone()),
        _ => {}
    }
    r
}

/// Checks the explicit curve for `id` at each `n`: it satisfies every minor of
/// `L_id` exactly, is positive definite at the largest `n`, and
/// `|n (r_n - r_0) - t|^2` is strictly decreasing along `ns` (or zero).
pub fn tangent_sequence_check(id: usize, rho: &Rational, t: &Direction, ns: &[u64], cone: &[Polynomial], l: &Relation) -> Result<bool> {
    if rho.abs() >= int(1) {
        return Err(Error::Precondition("|rho| must be below 1".into()));
    }
    if !direction_in_cone(t, cone) {
        return Err(Error::Precondition("direction is not in the cone".into()));
    }
    let r0 = cone_base_point(id, rho);
    if t.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    if id == 29 && (rho * &t[0] - &t[4]).is_zero() {
        return Err(Error::Precondition("rho*t12 - t24 must be nonzero".into()));
    }
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    let mut last: Option<Rational> = None;
    for (k, &n) in ns.iter().enumerate() {
        let r = tangent_sequence_point(id, rho, t, n)?;
        if !vanishes_at(l, &r)? {
            return Ok(false);
        }
        if k + 1 == ns.len() && !r.is_positive_definite()? {
            return Ok(false);
        }
        let nn = Rational::from_integer(n.into());
        let mut dist = Rational::zero();
        let mut idx = 0;
        for a in 0..4 {
            let dev = (&r[(a, a)] - &r0[(a, a)]) * &nn;
            dist += &dev * &dev;
            for b in a + 1..4 {
                let dev = (&r[(a, b)] - &r0[(a, b)]) * &nn - &t[idx];
                dist += &dev * &dev;
                idx += 1;
            }
        }
        if let Some(prev) = &last {
            // exact curves stay at distance zero
            if dist >= *prev && !dist.is_zero() {
                return Ok(false);
            }
        }
        last = Some(dist);
    }
    Ok(true)
}

/// Identity `r12 (1 - Π r_{i,i+2}) = Σ g_c f_c` over the cyclic couples `(k, k+1)|(k+2)`.
#[derive(Clone, Debug)]
pub struct CyclicCertificate {
    pub ground: usize,
    pub target: Polynomial,
    pub couples: Vec<Couple>,
    pub cofactors: Vec<Polynomial>,
}

impl CyclicCertificate {
    pub fn verify(&self) -> Result<bool> {
        let gens: Vec<Polynomial> = self.couples.iter().map(ci_polynomial).collect();
        crate::poly::verify_combination(&self.target, &self.cofactors, &gens)
    }

    /// The cyclic relation `{12|3, 23|4, ..., m1|2}`.
    pub fn relation(&self) -> Relation {
        Relation::from_couples(self.ground, self.couples.iter().copied()).expect("same ground")
    }
}

/// Telescoping certificate for the cyclic couples on `[m]`, `4 <= m <= 6`.
pub fn cyclic_certificate(m: usize) -> Result<CyclicCertificate> {
    if !(4..=6).contains(&m) {
        return Err(Error::Precondition(format!("cyclic certificates need 4 <= m <= 6, got {m}")));
    }
    let r = |a: usize, b: usize| Polynomial::var(a % m, b % m);
    let mut couples = Vec::new();
    let mut cofactors = Vec::new();
    let mut prefix = Polynomial::one();
    for k in 0..m {
        let c = Couple::new(m, k, (k + 1) % m, 1 << ((k + 2) % m))?;
        // f_k = r_{k,k+1} - r_{k,k+2} r_{k+1,k+2}, equal to the minor up to sign
        let fk = &r(k, k + 1) - &(&r(k, k + 2) * &r(k + 1, k + 2));
        let ci = ci_polynomial(&c);
        let sign = if ci == fk { Polynomial::one() } else { -&Polynomial::one() };
        debug_assert!(ci == fk || ci == -&fk);
        couples.push(c);
        cofactors.push(&prefix * &sign);
        prefix = &prefix * &r(k, k + 2);
    }
    let target = &r(0, 1) * &(&Polynomial::one() - &prefix);
    Ok(CyclicCertificate {
        ground: m,
        target,
        couples,
        cofactors,
    })
}

/// Component checks for ids 15, 24, 28, 37: containment in the variety, sample
/// points, representing components, and pairwise intersections against the
/// listed singular locus.
pub fn verify_component_decomposition(reg: &Registry, id: usize) -> Result<Report> {
    let comps = components(id)?;
    let l = reg.relation(id)?;
    let gens = ci_ideal_generators(l);
    let mut report = Report::new();
    for comp in &comps {
        let tag = format!("components.L{id}.{}", comp.name);
        let contained = gens.iter().all(|f| certify_membership(f, &comp.generators).is_certified());
        report.check(contained, format!("{tag}.contains-variety"), "every I_L generator reduces to 0");
        let r = matrix_from_entries(&comp.sample)?;
        let on_comp = vanish_all(&comp.generators, &r)?;
        let pd = r.is_positive_definite()?;
        if !pd {
            report.skip(format!("{tag}.sample"), "sample point is not positive definite");
            continue;
        }
        let rel = relation_of_matrix(&r)?;
        report.check(
            on_comp && l.is_subset(&rel)?,
            format!("{tag}.sample"),
            format!("relation {rel}"),
        );
        if comp.represents {
            report.check(rel == *l, format!("{tag}.represents"), format!("relation {rel}"));
        }
    }
    let loci = singular_locus(id)?;
    let mut matched = vec![false; loci.len()];
    for a in 0..comps.len() {
        for b in a + 1..comps.len() {
            let mut union = comps[a].generators.clone();
            union.extend(comps[b].generators.iter().cloned());
            let name = format!("components.L{id}.{}x{}", comps[a].name, comps[b].name);
            let mut inside = None;
            for (k, locus) in loci.iter().enumerate() {
                let locus_in_union = locus.iter().all(|g| certify_membership(g, &union).is_certified());
                let union_in_locus = union.iter().all(|g| certify_membership(g, locus).is_certified());
                if locus_in_union && union_in_locus {
                    matched[k] = true;
                    inside = Some(format!("equals locus {}", k + 1));
                    break;
                }
                if locus_in_union && inside.is_none() {
                    inside = Some(format!("inside locus {}", k + 1));
                }
            }
            let ok = inside.is_some();
            report.check(ok, name, inside.unwrap_or_else(|| "not covered by the listed locus".into()));
        }
    }
    for (k, m) in matched.iter().enumerate() {
        report.check(*m, format!("components.L{id}.locus{}", k + 1), "arises as a pairwise intersection");
    }
    Ok(report)
}

/// Points `(x, y, z)` of a named surface, on an `n x n` grid.
///
/// `ci` is `r12 r13 - r23 = 0` over `(r12, r13) ∈ [-1, 1]^2`; `quadric` is
/// `r13 r14 r34 - r14^2 - r34^2 + 1 = 0` solved for `r13` over `(r14, r34)`,
/// keeping points with `|r13| <= 1`.
pub fn surface_points(name: &str, n: usize) -> Result<Vec<[Rational; 3]>> {
    if n < 2 {
        return Err(Error::Precondition("grid needs at least 2 points per axis".into()));
    }
    let den = (n - 1) as i64;
    let coord = |k: usize| rat(2 * k as i64 - den, den);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (coord(a), coord(b));
            match name {
                "ci" => {
                    let z = &x * &y;
                    out.push([x, y, z]);
                }
                "quadric" => {
                    let prod = &x * &y;
                    if prod.is_zero() {
                        continue;
                    }
                    let r13 = (&x * &x + &y * &y - int(1)) / prod;
                    if r13.abs() <= int(1) {
                        out.push([r13, x, y]);
                    }
                }
                _ => return Err(Error::Parse(format!("unknown surface `{name}` (expected ci or quadric)"))),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r4(s: &str) -> Relation {
        Relation::parse(s, 4).unwrap()
    }

    #[test]
    fn m3_rank_drop_only_at_identity() {
        let cfg = RepeatedPair::new(3, 0, 1, 0, 0b100).unwrap();
        assert!(rank_drop_criterion(&cfg, &RationalMatrix::identity(3)).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = sample_repeated_pair_point(&cfg, &mut rng, true);
        assert_eq!(p, RationalMatrix::identity(3));
        let q = sample_repeated_pair_point(&cfg, &mut rng, false);
        assert!(!rank_drop_criterion(&cfg, &q).unwrap());
        assert_eq!(jacobian_rank(&cfg.relation(), &q).unwrap(), 2);
    }

    #[test]
    fn sampler_hits_variety() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let l = r4("12|3,12|4");
        let p = sample_accepted_point(&l, &mut rng, None, 200, |rel| *rel == l).unwrap();
        assert!(in_correlation_variety(&l, &p).unwrap());
    }

    #[test]
    fn cyclic_m4() {
        let c = cyclic_certificate(4).unwrap();
        assert!(c.verify().unwrap());
        assert_eq!(c.target, Polynomial::parse("r12 - r12*r13^2*r24^2").unwrap());
        assert!(cyclic_certificate(3).is_err());
    }

    #[test]
    fn surfaces() {
        assert_eq!(surface_points("ci", 3).unwrap().len(), 9);
        assert!(surface_points("torus", 3).is_err());
        for [r13, r14, r34] in surface_points("quadric", 9).unwrap() {
            let v = &r13 * &r14 * &r34 - &r14 * &r14 - &r34 * &r34 + int(1);
            assert!(v.is_zero());
        }
    }
}
