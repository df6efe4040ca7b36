//! Table-driven permutation action on 24-bit masks for `m = 4`.

use std::sync::OnceLock;

use crate::relation::{Couple, Permutation};

const SLOTS: usize = 24;

struct Tables {
    perms: Vec<Permutation>,
    /// `bytes[p][b][v]`: image of byte `b` of a mask having value `v` under perm `p`.
    bytes: Vec<[[u32; 256]; 3]>,
    dual: [[u32; 256]; 3],
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let perms = Permutation::all(4);
        let slot_image = |f: &dyn Fn(Couple) -> Couple| -> [usize; SLOTS] {
            let mut img = [0; SLOTS];
            for (s, out) in img.iter_mut().enumerate() {
                *out = f(Couple::from_slot(4, s)).slot();
            }
            img
        };
        let byte_tables = |img: &[usize; SLOTS]| {
            let mut t = [[0u32; 256]; 3];
            for (b, table) in t.iter_mut().enumerate() {
                for (v, entry) in table.iter_mut().enumerate() {
                    for bit in 0..8 {
                        if v & (1 << bit) != 0 {
                            *entry |= 1 << img[8 * b + bit];
                        }
                    }
                }
            }
            t
        };
        let bytes = perms
            .iter()
            .map(|p| byte_tables(&slot_image(&|c| c.permuted(p).expect("m = 4"))))
            .collect();
        let dual = byte_tables(&slot_image(&|c| c.dual()));
        Tables { perms, bytes, dual }
    })
}

#[inline]
fn apply(t: &[[u32; 256]; 3], mask: u32) -> u32 {
    t[0][(mask & 0xff) as usize] | t[1][((mask >> 8) & 0xff) as usize] | t[2][(mask >> 16) as usize]
}

/// Image of `mask` under the `p`-th permutation in lexicographic order.
#[cfg(test)]
pub fn permute(mask: u32, p: usize) -> u32 {
    apply(&tables().bytes[p], mask)
}

#[inline]
pub fn dual(mask: u32) -> u32 {
    apply(&tables().dual, mask)
}

pub fn permutation(p: usize) -> Permutation {
    tables().perms[p].clone()
}

/// Minimal image of `mask` and the first permutation index reaching it.
pub fn canonical(mask: u32) -> (u32, usize) {
    let t = tables();
    let mut best = (mask, 0);
    for (p, table) in t.bytes.iter().enumerate().skip(1) {
        let img = apply(table, mask);
        if img < best.0 {
            best = (img, p);
        }
    }
    best
}

/// Number of distinct images of `mask`.
pub fn orbit_size(mask: u32) -> usize {
    let t = tables();
    let mut imgs: Vec<u32> = t.bytes.iter().map(|table| apply(table, mask)).collect();
    imgs.sort_unstable();
    imgs.dedup();
    imgs.len()
}

/// All distinct images of `mask`, sorted.
pub fn orbit(mask: u32) -> Vec<u32> {
    let t = tables();
    let mut imgs: Vec<u32> = t.bytes.iter().map(|table| apply(table, mask)).collect();
    imgs.sort_unstable();
    imgs.dedup();
    imgs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Relation;

    #[test]
    fn agrees_with_generic_action() {
        let l = Relation::parse("12,13|2,23|14,34|1", 4).unwrap();
        for (p, perm) in Permutation::all(4).iter().enumerate() {
            assert_eq!(permute(l.mask(), p), l.permuted(perm).unwrap().mask());
        }
        let generic = Relation::from_couples(4, l.iter().map(|c| c.dual())).unwrap();
        assert_eq!(dual(l.mask()), generic.mask());
        assert_eq!(permute(l.mask(), 0), l.mask());
    }
}
