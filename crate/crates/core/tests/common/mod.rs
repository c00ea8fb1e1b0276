//! Test-only reference implementations. They share no code with the
//! library's kernels.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use emergelab::eturing::{parse_machine, MachineSpec};
use emergelab::grid::CellSet;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn machine(name: &str) -> MachineSpec {
    parse_machine(&read_fixture(&format!("tm/{name}.tm"))).unwrap()
}

/// One ECA generation, cell by cell, on a set of black coordinates.
pub fn naive_eca_step(rule: u8, black: &BTreeSet<i64>) -> BTreeSet<i64> {
    let (Some(&lo), Some(&hi)) = (black.first(), black.last()) else {
        return BTreeSet::new();
    };
    let mut out = BTreeSet::new();
    for p in lo - 1..=hi + 1 {
        let l = black.contains(&(p - 1)) as u8;
        let c = black.contains(&p) as u8;
        let r = black.contains(&(p + 1)) as u8;
        let v = l * 4 + c * 2 + r;
        if (rule >> v) & 1 == 1 {
            out.insert(p);
        }
    }
    out
}

/// C(n, k) mod 2 by Lucas: odd iff k's bits are a subset of n's.
pub fn binomial_odd(n: u64, k: u64) -> bool {
    k <= n && (k & !n) == 0
}

/// Life on a dense, fixed grid with a margin wide enough that nothing
/// reaches the border within `steps` generations.
pub fn naive_life_run(cells: &[(i64, i64)], steps: usize) -> BTreeSet<(i64, i64)> {
    if cells.is_empty() {
        return BTreeSet::new();
    }
    let min_x = cells.iter().map(|c| c.0).min().unwrap();
    let min_y = cells.iter().map(|c| c.1).min().unwrap();
    let max_x = cells.iter().map(|c| c.0).max().unwrap();
    let max_y = cells.iter().map(|c| c.1).max().unwrap();
    let margin = steps as i64 + 2;
    let w = (max_x - min_x + 1 + 2 * margin) as usize;
    let h = (max_y - min_y + 1 + 2 * margin) as usize;
    let mut grid = vec![vec![false; w]; h];
    for &(x, y) in cells {
        grid[(y - min_y + margin) as usize][(x - min_x + margin) as usize] = true;
    }
    for _ in 0..steps {
        let mut next = vec![vec![false; w]; h];
        for y in 1..h - 1 {
            for x in 1..w - 1 {
                let mut n = 0;
                for dy in 0..3 {
                    for dx in 0..3 {
                        if (dx, dy) != (1, 1) && grid[y + dy - 1][x + dx - 1] {
                            n += 1;
                        }
                    }
                }
                next[y][x] = n == 3 || (n == 2 && grid[y][x]);
            }
        }
        grid = next;
    }
    let mut out = BTreeSet::new();
    for (y, row) in grid.iter().enumerate() {
        for (x, &live) in row.iter().enumerate() {
            if live {
                out.insert((x as i64 + min_x - margin, y as i64 + min_y - margin));
            }
        }
    }
    out
}

pub fn to_btree(cells: &CellSet) -> BTreeSet<(i64, i64)> {
    cells.iter().collect()
}

/// The candidate-1 numbering, transcribed directly: bits of `j` row by row
/// in the smallest square that holds them.
pub fn naive_config(j: u64) -> Vec<(i64, i64)> {
    let bits: Vec<bool> = (0..64 - j.leading_zeros())
        .rev()
        .map(|b| (j >> b) & 1 == 1)
        .collect();
    let side = (1..).find(|s| s * s >= bits.len()).unwrap();
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| ((i % side) as i64, (i / side) as i64))
        .collect()
}

pub fn naive_survival_count(n: u64) -> u64 {
    (1..=n)
        .filter(|&j| !naive_life_run(&naive_config(j), n as usize).is_empty())
        .count() as u64
}

/// Survival counts for n = 0..=64, computed by an independent script.
pub const SURVIVAL_GOLDEN: [u64; 65] = [
    0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 3, 4, 5, 5, 5, 5, 6, 6, 6, 6, 7, 7, 8, 9, 10, 11, 12,
    13, 13, 13, 13, 13, 13, 13, 13, 14, 15, 15, 15, 15, 16, 16, 16, 17, 17, 17, 17, 18, 19, 20, 21,
    22, 22, 23, 24, 25, 25, 26, 26, 26, 27, 27,
];

/// Brute-force first repeat: smallest j with an earlier equal entry.
pub fn naive_first_repeat<T: PartialEq>(s: &[T]) -> Option<(usize, usize)> {
    for j in 0..s.len() {
        for i in 0..j {
            if s[i] == s[j] {
                return Some((i, j - i));
            }
        }
    }
    None
}

/// Survival counts for every n in `0..=max_n` at once. Config `j` is
/// stepped densely for `max_n` generations, noting after each one whether
/// anything is alive.
pub fn naive_survival_table(max_n: u64) -> Vec<u64> {
    let steps = max_n as usize;
    let margin = steps + 2;
    let size = 2 * margin + 8;
    let mut alive_at = vec![vec![false; steps + 1]; steps + 1];
    for j in 1..=max_n {
        let mut grid = vec![vec![false; size]; size];
        for (x, y) in naive_config(j) {
            grid[y as usize + margin][x as usize + margin] = true;
        }
        for alive in alive_at[j as usize].iter_mut().skip(1) {
            let mut next = vec![vec![false; size]; size];
            let mut any = false;
            for y in 1..size - 1 {
                for x in 1..size - 1 {
                    let mut n = 0;
                    for (dx, dy) in [
                        (0, 0),
                        (1, 0),
                        (2, 0),
                        (0, 1),
                        (2, 1),
                        (0, 2),
                        (1, 2),
                        (2, 2),
                    ] {
                        n += usize::from(grid[y + dy - 1][x + dx - 1]);
                    }
                    next[y][x] = n == 3 || (n == 2 && grid[y][x]);
                    any |= next[y][x];
                }
            }
            grid = next;
            *alive = any;
        }
    }
    (0..=steps)
        .map(|n| (1..=n).filter(|&j| alive_at[j][n]).count() as u64)
        .collect()
}
