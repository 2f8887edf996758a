#![allow(dead_code)]

use std::sync::Arc;

use tamearith_core::groupchar::{CharacterTable, FiniteGroup, SharedTable};

/// Quaternion group: element `2u + s` is `(-1)^s` times unit `u` of `1, i, j, k`.
pub fn q8() -> FiniteGroup {
    let units = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let signs = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];
    let mul = |a: usize, b: usize| {
        let s = if a % 2 == 0 { 1 } else { -1 } * if b % 2 == 0 { 1 } else { -1 } * signs[a / 2][b / 2];
        2 * units[a / 2][b / 2] + usize::from(s < 0)
    };
    let rows: Vec<Vec<usize>> = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
    FiniteGroup::from_table(&rows).unwrap()
}

pub fn s3() -> FiniteGroup {
    FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
}

pub fn d4() -> FiniteGroup {
    FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap()
}

pub fn klein() -> FiniteGroup {
    FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
}

/// The eight test groups.
pub fn corpus() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("C2", FiniteGroup::cyclic(2)),
        ("C3", FiniteGroup::cyclic(3)),
        ("C4", FiniteGroup::cyclic(4)),
        ("C2xC2", klein()),
        ("S3", s3()),
        ("D4", d4()),
        ("Q8", q8()),
        ("C6", FiniteGroup::cyclic(6)),
    ]
}

pub fn table(g: FiniteGroup) -> SharedTable {
    Arc::new(CharacterTable::compute(g).unwrap())
}
