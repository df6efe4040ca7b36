//! Shipped tables, graph data, witnesses and cone data, verified on load.
//!
//! The data directory defaults to `data/` at the workspace root and can be
//! overridden with the `GAUSSOID_DATA` environment variable.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use crate::axioms::{instantiate_schemata, RuleSet, Schema};
use crate::enumeration::{self, catalog, graph_histogram, BucketConvention};
use crate::error::{Error, Result};
use crate::geometry::SINGULAR_IDS;
use crate::graph::{d_separation_graphoid, separation_graphoid, Digraph, Graph};
use crate::linalg::{relation_of_matrix, Rational, RationalMatrix};
use crate::poly::Polynomial;
use crate::relation::{canonical_class, Couple, Permutation, Relation};
use crate::report::Report;

pub const TABLE1_LEN: usize = 53;
pub const TABLE2_IDS: std::ops::RangeInclusive<usize> = 54..=101;

#[derive(Clone, Debug)]
pub struct Table1Record {
    pub id: usize,
    pub relation: Relation,
    /// Relation as written in the file, `*` shorthand kept.
    pub text: String,
    pub singular: bool,
    pub dual_id: usize,
    pub dual_perm: Permutation,
}

#[derive(Clone, Debug)]
pub struct Table2Component {
    pub relation: Relation,
    pub table1_id: usize,
    pub perm: Permutation,
}

#[derive(Clone, Debug)]
pub struct Table2Record {
    pub id: usize,
    pub components: Vec<Table2Component>,
}

impl Table2Record {
    /// The complete relation: intersection of the components.
    pub fn relation(&self) -> Relation {
        self.components.iter().fold(Relation::full(4).expect("m = 4"), |acc, c| {
            acc.intersection(&c.relation).expect("same ground")
        })
    }
}

#[derive(Clone, Debug)]
pub struct SchemaRecord {
    pub schema: Schema,
    pub antecedent: Relation,
    pub consequent: Relation,
}

#[derive(Clone, Debug)]
pub struct GraphRecord {
    pub table1_id: usize,
    /// Number of kept semigaussoid classes with this separation graphoid.
    pub semigaussoids: usize,
    pub graph: Graph,
}

#[derive(Clone, Debug)]
pub struct DigraphRecord {
    pub table1_id: usize,
    pub digraph: Digraph,
}

#[derive(Clone, Debug)]
pub struct ConeGenerator {
    pub text: String,
    /// `(couple, cofactor)` pairs; the certificate is `Σ cofactor * f_couple`.
    pub certificate: Vec<(Couple, String)>,
}

/// Listed cone generators at the singular points of one relation.
#[derive(Clone, Debug)]
pub struct ConeData {
    pub id: usize,
    /// Entry holding the parameter `rho` of the base point, if any.
    pub base_var: Option<(usize, usize)>,
    pub relation: Relation,
    pub generators: Vec<ConeGenerator>,
}

impl ConeData {
    /// Generators and certificate cofactors (aligned with the couples of the
    /// relation in iteration order) for the parameter value `rho`.
    pub fn instantiate(&self, rho: &Rational) -> Result<(Vec<Polynomial>, Vec<Vec<Polynomial>>)> {
        let params = [("rho", rho.clone())];
        let couples: Vec<Couple> = self.relation.iter().collect();
        let mut gens = Vec::new();
        let mut certs = Vec::new();
        for g in &self.generators {
            gens.push(Polynomial::parse_with(&g.text, &params)?);
            let mut cof = vec![Polynomial::zero(); couples.len()];
            for (c, text) in &g.certificate {
                let k = couples
                    .iter()
                    .position(|x| x == c)
                    .ok_or_else(|| Error::Precondition(format!("couple {c} is not in L{}", self.id)))?;
                cof[k] = &cof[k] + &Polynomial::parse_with(text, &params)?;
            }
            certs.push(cof);
        }
        Ok((gens, certs))
    }
}

/// Everything under the data directory, loaded once and verified.
#[derive(Clone, Debug)]
pub struct Registry {
    pub dir: PathBuf,
    pub table1: Vec<Table1Record>,
    pub table2: Vec<Table2Record>,
    pub schemata: Vec<SchemaRecord>,
    pub rules: RuleSet,
    pub graphs: Vec<GraphRecord>,
    pub digraphs: Vec<DigraphRecord>,
    pub witnesses: BTreeMap<usize, RationalMatrix>,
    pub cones: BTreeMap<usize, ConeData>,
    pub expected_ranks: BTreeMap<usize, usize>,
}

/// `GAUSSOID_DATA` if set, else the workspace `data/` directory.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("GAUSSOID_DATA") {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Non-comment lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn fields<'a>(file: &str, line: usize, l: &'a str, n: usize) -> Result<Vec<&'a str>> {
    let mut f: Vec<&str> = l.split('\t').collect();
    while f.len() < n {
        // trailing empty columns may be stripped by editors
        f.push("");
    }
    if f.len() != n {
        return Err(Error::data(file, line, format!("expected {n} tab-separated fields, found {}", f.len())));
    }
    Ok(f)
}

fn at<T>(file: &str, line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::data(file, line, e.to_string()))
}

fn in_record<T>(file: &str, line: usize, id: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::data(file, line, format!("record {id}: {e}")))
}

fn parse_usize(file: &str, line: usize, s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::data(file, line, format!("`{s}` is not a nonnegative integer")))
}

fn parse_perm(file: &str, line: usize, id: usize, s: &str) -> Result<Permutation> {
    let s = s.trim();
    if s.is_empty() {
        Ok(Permutation::identity(4))
    } else {
        in_record(file, line, id, Permutation::parse_cycles(s, 4))
    }
}

fn load_table1(dir: &Path) -> Result<Vec<Table1Record>> {
    let file = "table1.tsv";
    let text = read(&dir.join(file))?;
    let mut out: Vec<Table1Record> = Vec::new();
    for (line, l) in records(&text) {
        let f = fields(file, line, l, 5)?;
        let id = parse_usize(file, line, f[0])?;
        if id != out.len() + 1 {
            return Err(Error::data(file, line, format!("record {id}: ids must run 1..{TABLE1_LEN} in order")));
        }
        let singular = match f[2].trim() {
            "yes" => true,
            "no" => false,
            other => return Err(Error::data(file, line, format!("record {id}: singular flag `{other}`"))),
        };
        out.push(Table1Record {
            id,
            relation: in_record(file, line, id, Relation::parse(f[1], 4))?,
            text: f[1].trim().to_string(),
            singular,
            dual_id: in_record(file, line, id, f[3].trim().parse().map_err(|_| Error::Parse(format!("dual id `{}`", f[3]))))?,
            dual_perm: parse_perm(file, line, id, f[4])?,
        });
    }
    if out.len() != TABLE1_LEN {
        return Err(Error::data(file, 0, format!("expected {TABLE1_LEN} records, found {}", out.len())));
    }
    let singular: Vec<usize> = out.iter().filter(|r| r.singular).map(|r| r.id).collect();
    if singular != SINGULAR_IDS {
        return Err(Error::data(file, 0, format!("singular flags mark {singular:?}")));
    }
    for r in &out {
        let bad = |msg: String| Error::data(file, r.id + 1, format!("record {}: {msg}", r.id));
        let Some(partner) = out.get(r.dual_id.wrapping_sub(1)) else {
            return Err(bad(format!("dual id {} out of range", r.dual_id)));
        };
        let mapped = r.relation.dual().permuted(&r.dual_perm)?;
        if mapped != partner.relation {
            return Err(bad(format!("dual under {} is {mapped}, not L{}", r.dual_perm, r.dual_id)));
        }
        if partner.dual_id != r.id {
            return Err(bad(format!("dual pairing is not an involution (L{} pairs with L{})", r.dual_id, partner.dual_id)));
        }
    }
    Ok(out)
}

fn load_table2(dir: &Path, table1: &[Table1Record]) -> Result<Vec<Table2Record>> {
    let file = "table2.tsv";
    let text = read(&dir.join(file))?;
    let mut out: Vec<Table2Record> = Vec::new();
    for (line, l) in records(&text) {
        let f = fields(file, line, l, 5)?;
        let id = parse_usize(file, line, f[0])?;
        let k: usize = in_record(file, line, id, f[1].trim().parse().map_err(|_| Error::Parse(format!("component `{}`", f[1]))))?;
        let relation = in_record(file, line, id, Relation::parse(f[2], 4))?;
        let table1_id: usize = in_record(file, line, id, f[3].trim().parse().map_err(|_| Error::Parse(format!("Table 1 id `{}`", f[3]))))?;
        let perm = parse_perm(file, line, id, f[4])?;
        let base = table1
            .get(table1_id.wrapping_sub(1))
            .ok_or_else(|| Error::data(file, line, format!("record {id}: Table 1 id {table1_id} out of range")))?;
        if base.relation.permuted(&perm)? != relation {
            return Err(Error::data(
                file,
                line,
                format!("record {id}: component {k} is not L{table1_id} under {perm}"),
            ));
        }
        let comp = Table2Component {
            relation,
            table1_id,
            perm,
        };
        match out.last_mut() {
            Some(rec) if rec.id == id => {
                if k != rec.components.len() + 1 {
                    return Err(Error::data(file, line, format!("record {id}: component numbering")));
                }
                rec.components.push(comp);
            }
            _ => {
                let expected = out.last().map_or(*TABLE2_IDS.start(), |r| r.id + 1);
                if id != expected || k != 1 {
                    return Err(Error::data(file, line, format!("record {id}: expected record {expected} component 1")));
                }
                out.push(Table2Record {
                    id,
                    components: vec![comp],
                });
            }
        }
    }
    if out.len() != TABLE2_IDS.count() {
        return Err(Error::data(file, 0, format!("expected 48 records, found {}", out.len())));
    }
    let cat = catalog();
    for rec in &out {
        let target = rec.relation();
        let bad = |msg: String| Error::data(file, 0, format!("record {}: {msg}", rec.id));
        if !cat.is_complete(&target)? {
            return Err(bad(format!("intersection {target} is not complete")));
        }
        if cat.is_representable(&target) {
            return Err(bad(format!("intersection {target} is representable")));
        }
        let comps: BTreeSet<Relation> = rec.components.iter().map(|c| c.relation).collect();
        let minimal: BTreeSet<Relation> = cat.minimal_representable_supersets(&target)?.into_iter().collect();
        if comps != minimal {
            return Err(bad("components differ from the minimal representable decomposition".into()));
        }
    }
    Ok(out)
}

fn load_schemata(dir: &Path) -> Result<(Vec<SchemaRecord>, RuleSet)> {
    let file = "implications.tsv";
    let text = read(&dir.join(file))?;
    let mut out = Vec::new();
    let mut rules = RuleSet::empty(4)?;
    for (line, l) in records(&text) {
        let f = fields(file, line, l, 3)?;
        let schema = at(file, line, Schema::parse(f[0].trim()))?;
        let antecedent = at(file, line, Relation::parse(f[1], 4))?;
        let consequent = at(file, line, Relation::parse(f[2], 4))?;
        at(file, line, rules.add_pattern(schema, &antecedent, &consequent, true))?;
        out.push(SchemaRecord {
            schema,
            antecedent,
            consequent,
        });
    }
    Ok((out, rules))
}

fn parse_edges(file: &str, line: usize, s: &str, sep: char) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for e in s.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (a, b) = e
            .split_once(sep)
            .ok_or_else(|| Error::data(file, line, format!("bad edge `{e}`")))?;
        let a = parse_usize(file, line, a)?;
        let b = parse_usize(file, line, b)?;
        if !(1..=4).contains(&a) || !(1..=4).contains(&b) {
            return Err(Error::data(file, line, format!("bad edge `{e}`")));
        }
        out.push((a - 1, b - 1));
    }
    Ok(out)
}

fn load_graphs(dir: &Path) -> Result<Vec<GraphRecord>> {
    let file = "graphs.tsv";
    let text = read(&dir.join(file))?;
    let mut out = Vec::new();
    for (line, l) in records(&text) {
        let f = fields(file, line, l, 3)?;
        out.push(GraphRecord {
            table1_id: parse_usize(file, line, f[0])?,
            semigaussoids: parse_usize(file, line, f[1])?,
            graph: at(file, line, Graph::from_edges(4, &parse_edges(file, line, f[2], '-')?))?,
        });
    }
    Ok(out)
}

fn load_digraphs(dir: &Path) -> Result<Vec<DigraphRecord>> {
    let file = "digraphs.tsv";
    let text = read(&dir.join(file))?;
    let mut out = Vec::new();
    for (line, l) in records(&text) {
        let f = fields(file, line, l, 2)?;
        let digraph = at(file, line, Digraph::from_arcs(4, &parse_edges(file, line, f[1], '>')?))?;
        if !digraph.is_acyclic() {
            return Err(Error::data(file, line, "digraph has a directed cycle"));
        }
        out.push(DigraphRecord {
            table1_id: parse_usize(file, line, f[0])?,
            digraph,
        });
    }
    Ok(out)
}

fn load_witnesses(dir: &Path, table1: &[Table1Record]) -> Result<BTreeMap<usize, RationalMatrix>> {
    let mut out = BTreeMap::new();
    for rec in table1 {
        let name = format!("witnesses/{}.mat", rec.id);
        let m = at(&name, 0, RationalMatrix::parse(&read(&dir.join(&name))?))?;
        if m.rows() != 4 || !m.is_symmetric() || !m.has_unit_diagonal() {
            return Err(Error::data(&name, 0, "witness must be a symmetric 4x4 matrix with unit diagonal"));
        }
        let rel = at(&name, 0, relation_of_matrix(&m))?;
        if rel != rec.relation {
            return Err(Error::data(&name, 0, format!("witness represents {rel}, not L{}", rec.id)));
        }
        out.insert(rec.id, m);
    }
    Ok(out)
}

fn load_cones(dir: &Path, table1: &[Table1Record]) -> Result<BTreeMap<usize, ConeData>> {
    let mut out = BTreeMap::new();
    for id in crate::geometry::CONE_IDS {
        let name = format!("cones/{id}.poly");
        let text = read(&dir.join(&name))?;
        let relation = table1[id - 1].relation;
        let mut cone = ConeData {
            id,
            base_var: None,
            relation,
            generators: Vec::new(),
        };
        for (line, l) in records(&text) {
            let (kw, rest) = l.trim().split_once(char::is_whitespace).unwrap_or((l.trim(), ""));
            match kw {
                "base" => {
                    let p = at(&name, line, Polynomial::parse(rest))?;
                    let vars = p.variables();
                    if vars.len() != 1 || p.num_terms() != 1 {
                        return Err(Error::data(&name, line, format!("`{rest}` is not a variable")));
                    }
                    cone.base_var = Some(crate::poly::var_pair(vars[0]));
                }
                "gen" => {
                    let (poly, cert) = rest.split_once('|').unwrap_or((rest, ""));
                    let mut certificate = Vec::new();
                    for part in cert.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                        let (c, cof) = part
                            .split_once(':')
                            .ok_or_else(|| Error::data(&name, line, format!("bad certificate term `{part}`")))?;
                        let rel = at(&name, line, Relation::parse(c, 4))?;
                        let couple = match rel.iter().collect::<Vec<_>>()[..] {
                            [c] => c,
                            _ => return Err(Error::data(&name, line, format!("`{c}` is not one couple"))),
                        };
                        if !relation.contains(&couple) {
                            return Err(Error::data(&name, line, format!("couple {couple} is not in L{id}")));
                        }
                        certificate.push((couple, cof.trim().to_string()));
                    }
                    cone.generators.push(ConeGenerator {
                        text: poly.trim().to_string(),
                        certificate,
                    });
                }
                other => return Err(Error::data(&name, line, format!("unknown keyword `{other}`"))),
            }
        }
        at(&name, 0, cone.instantiate(&Rational::from_integer(0.into())))?;
        out.insert(id, cone);
    }
    Ok(out)
}

fn load_expected_ranks(dir: &Path) -> Result<BTreeMap<usize, usize>> {
    let file = "expected_ranks.tsv";
    let text = read(&dir.join(file))?;
    let mut out = BTreeMap::new();
    for (line, l) in records(&text) {
        let f = fields(file, line, l, 2)?;
        out.insert(parse_usize(file, line, f[0])?, parse_usize(file, line, f[1])?);
    }
    if out.keys().copied().ne(1..=TABLE1_LEN) {
        return Err(Error::data(file, 0, "expected one rank per Table 1 id"));
    }
    Ok(out)
}

impl Registry {
    /// Loads and verifies every file; the first violation aborts the load.
    pub fn load(dir: impl AsRef<Path>) -> Result<Registry> {
        let dir = dir.as_ref().to_path_buf();
        let table1 = load_table1(&dir)?;
        let table2 = load_table2(&dir, &table1)?;
        let (schemata, rules) = load_schemata(&dir)?;
        Ok(Registry {
            graphs: load_graphs(&dir)?,
            digraphs: load_digraphs(&dir)?,
            witnesses: load_witnesses(&dir, &table1)?,
            cones: load_cones(&dir, &table1)?,
            expected_ranks: load_expected_ranks(&dir)?,
            table1,
            table2,
            schemata,
            rules,
            dir,
        })
    }

    /// The registry for [`data_dir`], loaded on first use.
    pub fn global() -> Result<&'static Registry> {
        static CACHE: OnceLock<Result<Registry>> = OnceLock::new();
        CACHE.get_or_init(|| Registry::load(data_dir())).as_ref().map_err(Clone::clone)
    }

    pub fn record(&self, id: usize) -> Result<&Table1Record> {
        self.table1.get(id.wrapping_sub(1)).ok_or(Error::UnsupportedRelation(id))
    }

    pub fn relation(&self, id: usize) -> Result<&Relation> {
        Ok(&self.record(id)?.relation)
    }

    pub fn witness(&self, id: usize) -> Result<&RationalMatrix> {
        self.witnesses.get(&id).ok_or(Error::UnsupportedRelation(id))
    }

    pub fn expected_rank(&self, id: usize) -> Result<usize> {
        self.expected_ranks.get(&id).copied().ok_or(Error::UnsupportedRelation(id))
    }

    pub fn cone(&self, id: usize) -> Result<&ConeData> {
        self.cones.get(&id).ok_or(Error::UnsupportedRelation(id))
    }

    /// Table 1 id of the class of `l`, with a permutation mapping `L_id` onto `l`.
    pub fn identify(&self, l: &Relation) -> Option<(usize, Permutation)> {
        let target = canonical_class(l);
        self.table1.iter().find_map(|r| {
            let c = canonical_class(&r.relation);
            (c.representative == target.representative).then(|| {
                // c.witness_perm maps L_id to the representative; target.witness maps l to it
                let to_l = target.witness_perm.inverse().compose(&c.witness_perm).expect("same size");
                (r.id, to_l)
            })
        })
    }

    /// Cross-checks against fresh enumeration: Table 1 and 2, graphs, duals, rules.
    pub fn verify_tables(&self) -> Result<Report> {
        let mut rep = Report::new();
        let cat = catalog();

        // Table 1 against the representable scan
        let shipped: BTreeSet<String> = self.table1.iter().map(|r| canonical_class(&r.relation).representative.to_string()).collect();
        let fresh: BTreeSet<String> = cat.representable.classes.iter().map(|c| c.representative.to_string()).collect();
        rep.check(
            shipped == fresh && shipped.len() == TABLE1_LEN,
            "table1.classes",
            format!("{} shipped, {} enumerated, {} in common", shipped.len(), fresh.len(), shipped.intersection(&fresh).count()),
        );
        let labeled: usize = self.table1.iter().map(|r| crate::relation::orbit(&r.relation).len()).sum();
        rep.check(
            labeled == cat.representable.total_labeled,
            "table1.labeled",
            format!("{labeled} labeled relations, scan found {}", cat.representable.total_labeled),
        );

        // dual pairing
        let fixed: Vec<usize> = self.table1.iter().filter(|r| r.dual_id == r.id).map(|r| r.id).collect();
        let mut dual_ok = true;
        for r in &self.table1 {
            let partner = &self.table1[r.dual_id - 1];
            let mapped = r.relation.dual().permuted(&r.dual_perm)?;
            dual_ok &= mapped == partner.relation && partner.dual_id == r.id;
        }
        rep.check(dual_ok, "table1.duals", format!("involution with {} self-dual ids", fixed.len()));

        // Table 2
        let mut t2_ok = true;
        let mut seen: BTreeSet<Relation> = BTreeSet::new();
        for rec in &self.table2 {
            let target = rec.relation();
            let d = enumeration::minimal_representable_decomposition(&target)?;
            let shipped: BTreeSet<Relation> = rec.components.iter().map(|c| c.relation).collect();
            let derived: BTreeSet<Relation> = d.components.iter().copied().collect();
            let ok = shipped == derived && d.is_antichain() && d.intersection() == target;
            t2_ok &= ok;
            if !ok {
                rep.check(false, format!("table2.{}", rec.id), "decomposition differs");
            }
            seen.insert(canonical_class(&target).representative);
        }
        rep.check(t2_ok, "table2.decompositions", format!("{} records re-derived", self.table2.len()));
        let complete_nonrep: BTreeSet<Relation> = cat
            .complete
            .classes
            .iter()
            .map(|c| c.representative)
            .filter(|r| !cat.is_representable(r))
            .collect();
        rep.check(
            seen == complete_nonrep,
            "table2.classes",
            format!("{} distinct classes, {} complete non-representable", seen.len(), complete_nonrep.len()),
        );
        rep.check(
            cat.complete.len() == TABLE1_LEN + self.table2.len(),
            "complete.count",
            format!("{} complete classes", cat.complete.len()),
        );

        // undirected graphs
        let hist = graph_histogram(BucketConvention::NonStrict);
        let mut total = 0;
        for g in &self.graphs {
            let sep = separation_graphoid(&g.graph);
            let target = self.relation(g.table1_id)?;
            let canon = canonical_class(&sep).representative;
            let same_class = canon == canonical_class(target).representative;
            let count = hist.buckets.iter().find(|(r, _)| *r == canon).map_or(0, |(_, n)| *n);
            total += count;
            rep.check(
                same_class && count == g.semigaussoids,
                format!("graphs.L{}", g.table1_id),
                format!("{} semigaussoids{}", count, if sep == *target { ", exact" } else { ", up to relabeling" }),
            );
        }
        let saturated = hist.kept - total;
        rep.check(
            hist.kept == 109 && saturated == 1,
            "graphs.total",
            format!("{} kept classes ({} for the empty graph), {} others", hist.kept, saturated, hist.rest),
        );

        // acyclic digraphs
        for d in &self.digraphs {
            let rel = d_separation_graphoid(&d.digraph)?;
            let target = self.relation(d.table1_id)?;
            let same_class = canonical_class(&rel).representative == canonical_class(target).representative;
            rep.check(
                same_class,
                format!("digraphs.L{}", d.table1_id),
                if rel == *target { "exact".to_string() } else { format!("{rel} up to relabeling") },
            );
        }

        // schemata: file against built-in patterns
        let built = instantiate_schemata(4, &Schema::appendix())?;
        let pairs = |s: &RuleSet| -> BTreeSet<(Relation, Relation)> { s.rules().iter().map(|r| (r.antecedent, r.consequent)).collect() };
        rep.check(
            pairs(&built) == pairs(&self.rules),
            "implications.rules",
            format!("{} instantiated rules from {} patterns", self.rules.len(), self.schemata.len()),
        );

        // witnesses, re-checked
        let mut wit_ok = true;
        for r in &self.table1 {
            wit_ok &= relation_of_matrix(self.witness(r.id)?)? == r.relation;
        }
        rep.check(wit_ok, "witnesses", format!("{} witnesses represent their relations", self.witnesses.len()));
        Ok(rep)
    }
}

/// Serializes a matrix in the witness file format.
pub fn write_matrix(path: &Path, m: &RationalMatrix) -> Result<()> {
    fs::write(path, m.to_string()).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}
