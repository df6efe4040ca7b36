//! Regenerates `data/witnesses/*.mat` and `data/expected_ranks.tsv`.
//!
//! Witnesses are exact positive definite correlation matrices with
//! denominators at most 1024 whose relation is exactly the Table 1 entry.
//! The expected rank is the largest Jacobian rank over the witness and 50
//! further points of the variety near it.
//!
//! Usage: cargo run --release --example gen_witnesses [data-dir]

use std::fmt::Write as _;
use std::path::PathBuf;

use gaussoid::datasets::{data_dir, write_matrix};
use gaussoid::geometry::{jacobian_rank, sample_accepted_point, sample_variety_point};
use gaussoid::linalg::{RationalMatrix, relation_of_matrix};
use gaussoid::Relation;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_DENOM: u32 = 1024;

fn small_denominators(r: &RationalMatrix) -> bool {
    let bound = BigInt::from(MAX_DENOM);
    (0..r.rows()).all(|a| (0..r.cols()).all(|b| *r[(a, b)].denom() <= bound))
}

fn main() {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(data_dir);
    let table = std::fs::read_to_string(dir.join("table1.tsv")).expect("table1.tsv");
    std::fs::create_dir_all(dir.join("witnesses")).expect("witness dir");
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ranks = String::from("# table1_id\texpected_rank\n");
    for line in table.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let f: Vec<&str> = line.split('\t').collect();
        let id: usize = f[0].parse().expect("id");
        let l = Relation::parse(f[1], 4).expect("relation");
        let w = sample_accepted_point(&l, &mut rng, None, 200_000, |rel| *rel == l)
            .into_iter()
            .chain(std::iter::repeat_with(|| sample_accepted_point(&l, &mut rng, None, 200_000, |rel| *rel == l)).flatten())
            .find(|r| r.is_positive_definite().unwrap() && small_denominators(r))
            .expect("witness");
        assert_eq!(relation_of_matrix(&w).unwrap(), l);
        let mut rank = jacobian_rank(&l, &w).unwrap();
        let mut found = 0;
        while found < 50 {
            if let Some(r) = sample_variety_point(&l, &mut rng, Some(&w)) {
                rank = rank.max(jacobian_rank(&l, &r).unwrap());
                found += 1;
            }
        }
        write_matrix(&dir.join(format!("witnesses/{id}.mat")), &w).unwrap();
        writeln!(ranks, "{id}\t{rank}").unwrap();
        eprintln!("L{id}: {} couples, rank {rank}", l.len());
    }
    std::fs::write(dir.join("expected_ranks.tsv"), ranks).unwrap();
}
