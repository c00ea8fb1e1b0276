use rayon::prelude::*;

use crate::grid::CellSet;
use crate::life;

/// Maps indices `j >= 1` to Life configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConfigNumbering {
    /// The bits of `j`, most significant first, laid out row by row in a
    /// square of side `ceil(sqrt(bit length))`; a `1` is a live cell.
    #[default]
    SquareBinary,
}

impl ConfigNumbering {
    pub fn config(&self, j: u64) -> CellSet {
        match self {
            ConfigNumbering::SquareBinary => {
                let bits = format!("{j:b}");
                let len = bits.len();
                let mut side = 1;
                while side * side < len {
                    side += 1;
                }
                bits.bytes()
                    .enumerate()
                    .filter(|(_, b)| *b == b'1')
                    .map(|(i, _)| ((i % side) as i64, (i / side) as i64))
                    .collect()
            }
        }
    }
}

/// How many configurations `1..=n` still have a live cell after exactly `n`
/// generations.
pub fn life_survival_count(numbering: ConfigNumbering, n: u64) -> u64 {
    (1..=n)
        .into_par_iter()
        .filter(|&j| !life::run(&numbering.config(j), n as usize).is_empty())
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::life::patterns::block;

    #[test]
    fn numbering_layout() {
        let num = ConfigNumbering::SquareBinary;
        assert_eq!(num.config(1), CellSet::from([(0, 0)]));
        assert_eq!(num.config(2), CellSet::from([(0, 0)]));
        assert_eq!(num.config(3), CellSet::from([(0, 0), (1, 0)]));
        assert_eq!(num.config(15), block());
        // 5 bits -> side 3: "10111" fills row 0 with 1,0,1 and row 1 with 1,1.
        assert_eq!(
            num.config(0b10111),
            CellSet::from([(0, 0), (2, 0), (0, 1), (1, 1)])
        );
    }

    #[test]
    fn small_counts() {
        let num = ConfigNumbering::SquareBinary;
        assert_eq!(life_survival_count(num, 0), 0);
        assert_eq!(life_survival_count(num, 3), 0);
        assert!(life_survival_count(num, 15) >= 1);
    }
}
