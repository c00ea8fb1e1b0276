use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::Zero;

use super::CandidateError;

/// First `count` decimals of `sqrt(m)` after the decimal point, from the
/// exact integer square root of `m * 10^(2 count)`.
pub fn sqrt_digits(m: u64, count: usize) -> Result<Vec<u8>, CandidateError> {
    if m < 2 {
        return Err(CandidateError::InvalidRadicand(m));
    }
    let root = m.sqrt();
    if root * root == m {
        return Err(CandidateError::RationalSqrt(m));
    }
    let scaled = BigUint::from(m) * BigUint::from(10u8).pow(2 * count as u32);
    let digits = scaled.sqrt().to_string();
    let int_len = root.to_string().len();
    Ok(digits.bytes().skip(int_len).map(|b| b - b'0').collect())
}

/// Parses a digit file: ASCII digits, whitespace ignored.
pub fn parse_digits(text: &str) -> Result<Vec<u8>, CandidateError> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .enumerate()
        .map(|(i, c)| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or(CandidateError::BadDigit {
                    position: i + 1,
                    found: c,
                })
        })
        .collect()
}

/// Default cap on how many decimals a square-root stream will compute.
pub const DEFAULT_SQRT_DIGIT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Source {
    Sqrt(u64),
    Fixed,
}

/// A forward-only reader over the decimals of a real number. Digit 1 is the
/// first digit after the decimal point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStream {
    source: Source,
    digits: Vec<u8>,
    cursor: usize,
    limit: usize,
}

impl DigitStream {
    pub fn sqrt(m: u64) -> Result<Self, CandidateError> {
        Self::sqrt_with_limit(m, DEFAULT_SQRT_DIGIT_LIMIT)
    }

    /// A square-root stream that refuses to compute more than `limit`
    /// decimals.
    pub fn sqrt_with_limit(m: u64, limit: usize) -> Result<Self, CandidateError> {
        let digits = sqrt_digits(m, 64.min(limit))?;
        Ok(Self {
            source: Source::Sqrt(m),
            digits,
            cursor: 0,
            limit,
        })
    }

    pub fn from_digits(digits: Vec<u8>) -> Result<Self, CandidateError> {
        if let Some(&d) = digits.iter().find(|&&d| d > 9) {
            return Err(CandidateError::BadDigit {
                position: 0,
                found: char::from(b'0' + d),
            });
        }
        let limit = digits.len();
        Ok(Self {
            source: Source::Fixed,
            digits,
            cursor: 0,
            limit,
        })
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Digits read so far.
    pub fn consumed(&self) -> &[u8] {
        &self.digits[..self.cursor]
    }

    fn ensure(&mut self, upto: usize) -> Result<(), CandidateError> {
        if upto <= self.digits.len() {
            return Ok(());
        }
        match self.source {
            Source::Sqrt(m) if upto <= self.limit => {
                self.digits = sqrt_digits(m, upto.max(2 * self.digits.len()).min(self.limit))?;
                Ok(())
            }
            _ => Err(CandidateError::InsufficientDigits {
                needed: upto,
                available: self.limit,
            }),
        }
    }

    /// Reads the next `len` digits.
    pub fn take(&mut self, len: usize) -> Result<&[u8], CandidateError> {
        let end = self
            .cursor
            .checked_add(len)
            .ok_or(CandidateError::InsufficientDigits {
                needed: usize::MAX,
                available: self.digits.len(),
            })?;
        self.ensure(end)?;
        let start = self.cursor;
        self.cursor = end;
        Ok(&self.digits[start..end])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBlock {
    pub digits: Vec<u8>,
    pub value: BigUint,
}

fn decimal_value(digits: &[u8]) -> BigUint {
    digits
        .iter()
        .fold(BigUint::zero(), |acc, &d| acc * 10u8 + d)
}

/// The chain with its blocks: block 1 is one digit, and block `k` has as
/// many digits as block `k - 1` is worth.
pub fn digit_chain_blocks(
    stream: &mut DigitStream,
    n: usize,
) -> Result<Vec<ChainBlock>, CandidateError> {
    let mut blocks: Vec<ChainBlock> = Vec::with_capacity(n);
    for k in 1..=n {
        let len = match blocks.last() {
            None => 1,
            Some(prev) => {
                usize::try_from(&prev.value).map_err(|_| CandidateError::InsufficientDigits {
                    needed: usize::MAX,
                    available: stream.cursor(),
                })?
            }
        };
        let digits = stream.take(len)?.to_vec();
        let value = decimal_value(&digits);
        if value.is_zero() {
            return Err(CandidateError::ChainDegenerate(k));
        }
        blocks.push(ChainBlock { digits, value });
    }
    Ok(blocks)
}

/// `[f(1), ..., f(n)]` where `f(1)` is the first decimal and `f(k)` is the
/// number spelled by the next `f(k-1)` decimals.
pub fn digit_chain(stream: &mut DigitStream, n: usize) -> Result<Vec<BigUint>, CandidateError> {
    Ok(digit_chain_blocks(stream, n)?
        .into_iter()
        .map(|b| b.value)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_digits(2, 5).unwrap(), vec![4, 1, 4, 2, 1]);
        assert_eq!(sqrt_digits(3, 5).unwrap(), vec![7, 3, 2, 0, 5]);
        assert_eq!(sqrt_digits(2, 0).unwrap(), Vec::<u8>::new());
        assert_eq!(sqrt_digits(9, 3), Err(CandidateError::RationalSqrt(9)));
        assert_eq!(sqrt_digits(1, 3), Err(CandidateError::InvalidRadicand(1)));
        // Integer part with more than one digit.
        assert_eq!(sqrt_digits(200, 4).unwrap(), vec![1, 4, 2, 1]);
    }

    #[test]
    fn sqrt2_chain() {
        let mut s = DigitStream::sqrt(2).unwrap();
        assert_eq!(digit_chain(&mut s, 2).unwrap(), big(&[4, 1421]));
        assert_eq!(s.consumed(), &[4, 1, 4, 2, 1]);
    }

    #[test]
    fn sqrt_stream_extends_itself() {
        let mut s = DigitStream::sqrt(2).unwrap();
        s.take(100).unwrap();
        assert_eq!(s.consumed(), sqrt_digits(2, 100).unwrap().as_slice());
    }

    #[test]
    fn sqrt_stream_respects_limit() {
        let mut s = DigitStream::sqrt_with_limit(2, 10).unwrap();
        assert_eq!(s.take(10).unwrap().len(), 10);
        assert_eq!(
            s.take(1),
            Err(CandidateError::InsufficientDigits {
                needed: 11,
                available: 10
            })
        );
    }

    #[test]
    fn degenerate_chain() {
        let mut s = DigitStream::from_digits(parse_digits("1 0 0 0").unwrap()).unwrap();
        assert_eq!(
            digit_chain(&mut s, 2),
            Err(CandidateError::ChainDegenerate(2))
        );
        let mut s = DigitStream::from_digits(vec![0, 1]).unwrap();
        assert_eq!(
            digit_chain(&mut s, 1),
            Err(CandidateError::ChainDegenerate(1))
        );
    }

    #[test]
    fn leading_zeros_keep_their_width() {
        // f(1)=4, f(2)="0042"=42, then 42 more digits are needed.
        let mut s = DigitStream::from_digits(parse_digits("40042").unwrap()).unwrap();
        let blocks = digit_chain_blocks(&mut s, 2).unwrap();
        assert_eq!(blocks[1].digits, vec![0, 0, 4, 2]);
        assert_eq!(blocks[1].value, BigUint::from(42u8));
        let mut s = DigitStream::from_digits(parse_digits("40042").unwrap()).unwrap();
        assert!(matches!(
            digit_chain(&mut s, 3),
            Err(CandidateError::InsufficientDigits {
                needed: 47,
                available: 5
            })
        ));
    }

    #[test]
    fn bad_digit_file() {
        assert_eq!(
            parse_digits("14 1x"),
            Err(CandidateError::BadDigit {
                position: 4,
                found: 'x'
            })
        );
    }
}
