use std::fs;
use std::path::{Path, PathBuf};

use gaussoid::datasets::{data_dir, Registry, TABLE1_LEN};
use gaussoid::enumeration::catalog;
use gaussoid::graph::{d_separation_graphoid, separation_graphoid};
use gaussoid::linalg::relation_of_matrix;
use gaussoid::{canonical_class, Error, Permutation, Relation};

fn reg() -> &'static Registry {
    Registry::global().unwrap()
}

fn r(s: &str) -> Relation {
    Relation::parse(s, 4).unwrap()
}

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), target).unwrap();
        }
    }
}

/// Copy of the data directory with one file rewritten.
fn corrupted(tag: &str, file: &str, edit: impl Fn(&str) -> String) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gaussoid-data-{}-{tag}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    copy_dir(&data_dir(), &dir);
    let path = dir.join(file);
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, edit(&text)).unwrap();
    dir
}

fn load_error(dir: &Path) -> String {
    let err = Registry::load(dir).expect_err("corrupted data must not load");
    let _ = fs::remove_dir_all(dir);
    assert!(matches!(err, Error::Data { .. }), "{err:?}");
    err.to_string()
}

fn replace_line(text: &str, prefix: &str, f: impl Fn(&str) -> String) -> String {
    text.lines()
        .map(|l| if l.starts_with(prefix) { f(l) } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

#[test]
fn table1_shape() {
    assert_eq!(reg().table1.len(), TABLE1_LEN);
    assert_eq!(reg().relation(2).unwrap().len(), 20);
    let self_dual = reg().table1.iter().filter(|t| t.dual_id == t.id).count();
    assert_eq!(self_dual, 21);
}

#[test]
fn table1_row_31() {
    let rec = reg().record(31).unwrap();
    assert_eq!(rec.relation, r("12|3"));
    assert_eq!(rec.dual_id, 31);
    assert_eq!(rec.dual_perm, Permutation::parse_cycles("(34)", 4).unwrap());
}

#[test]
fn dual_permutations() {
    for rec in &reg().table1 {
        let dual = rec.relation.dual().permuted(&rec.dual_perm).unwrap();
        assert_eq!(&dual, reg().relation(rec.dual_id).unwrap(), "L{}", rec.id);
    }
    let l10 = reg().relation(10).unwrap();
    assert_eq!(l10.permuted(&Permutation::parse_cycles("(14)(23)", 4).unwrap()).unwrap(), l10.dual());
    assert_eq!(canonical_class(&reg().relation(3).unwrap().dual()).representative, canonical_class(reg().relation(38).unwrap()).representative);
}

#[test]
fn table1_matches_enumeration() {
    let mut shipped: Vec<Relation> = reg().table1.iter().map(|t| canonical_class(&t.relation).representative).collect();
    shipped.sort();
    let computed: Vec<Relation> = catalog().representable.classes.iter().map(|c| c.representative).collect();
    assert_eq!(shipped, computed);
}

#[test]
fn table2_row_54() {
    let rec = reg().table2.iter().find(|t| t.id == 54).unwrap();
    assert_eq!(rec.components.len(), 2);
    assert!(rec.components.iter().all(|c| c.table1_id == 2));
    let perms: Vec<String> = rec.components.iter().map(|c| c.perm.to_string()).collect();
    assert!(perms.contains(&"()".to_string()) && perms.contains(&"(234)".to_string()), "{perms:?}");
}

#[test]
fn table2_intersections_are_complete_non_representables() {
    let cat = catalog();
    assert_eq!(reg().table2.len(), 48);
    for rec in &reg().table2 {
        let l = rec.relation();
        assert!(cat.is_complete(&l).unwrap(), "{}", rec.id);
        assert!(!cat.is_representable(&l), "{}", rec.id);
        for c in &rec.components {
            let base = reg().relation(c.table1_id).unwrap();
            assert_eq!(base.permuted(&c.perm).unwrap(), c.relation);
        }
    }
}

#[test]
fn graphs_give_labelled_relations() {
    for g in &reg().graphs {
        let l = separation_graphoid(&g.graph);
        let (id, _) = reg().identify(&l).unwrap();
        assert_eq!(id, g.table1_id);
    }
    for d in &reg().digraphs {
        let l = d_separation_graphoid(&d.digraph).unwrap();
        let (id, _) = reg().identify(&l).unwrap();
        assert_eq!(id, d.table1_id);
    }
}

#[test]
fn witnesses_represent_their_relations() {
    for rec in &reg().table1 {
        let w = reg().witness(rec.id).unwrap();
        assert_eq!(relation_of_matrix(w).unwrap(), rec.relation, "L{}", rec.id);
    }
}

#[test]
fn verify_tables_passes() {
    let report = reg().verify_tables().unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.to_string(), reg().verify_tables().unwrap().to_string());
}

#[test]
fn identify_finds_permutation() {
    let p = Permutation::parse_cycles("(1243)", 4).unwrap();
    let l = reg().relation(17).unwrap().permuted(&p).unwrap();
    let (id, perm) = reg().identify(&l).unwrap();
    assert_eq!(id, 17);
    assert_eq!(reg().relation(17).unwrap().permuted(&perm).unwrap(), l);
    assert!(reg().identify(&r("12,13|2")).is_none());
}

#[test]
fn wrong_table1_relation_names_record() {
    let dir = corrupted("t1", "table1.tsv", |t| replace_line(t, "7\t", |l| {
        let mut f: Vec<String> = l.split('\t').map(String::from).collect();
        f[1] = "12".into();
        f.join("\t")
    }));
    let msg = load_error(&dir);
    assert!(msg.contains("table1.tsv") && msg.contains("record 7"), "{msg}");
}

#[test]
fn bad_couple_names_record() {
    let dir = corrupted("couple", "table1.tsv", |t| replace_line(t, "12\t", |l| l.replacen('\t', "\t15,", 1)));
    let msg = load_error(&dir);
    assert!(msg.contains("record 12"), "{msg}");
}

#[test]
fn wrong_table2_component_names_record() {
    let dir = corrupted("t2", "table2.tsv", |t| {
        replace_line(t, "60\t1\t", |l| {
            let mut f: Vec<String> = l.split('\t').map(String::from).collect();
            f[2] = format!("12,{}", f[2]);
            f.join("\t")
        })
    });
    let msg = load_error(&dir);
    assert!(msg.contains("table2.tsv") && msg.contains("record 60"), "{msg}");
}

#[test]
fn wrong_witness_names_record() {
    let dir = corrupted("w", "witnesses/9.mat", |_| "n=4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n".into());
    let msg = load_error(&dir);
    assert!(msg.contains("9"), "{msg}");
}

#[test]
fn missing_expected_rank_is_reported() {
    let dir = corrupted("rank", "expected_ranks.tsv", |t| replace_line(t, "5\t", |_| String::new()));
    let msg = load_error(&dir);
    assert!(msg.contains("expected_ranks"), "{msg}");
}

#[test]
fn missing_directory_is_an_error() {
    assert!(Registry::load("/nonexistent/gaussoid").is_err());
}
