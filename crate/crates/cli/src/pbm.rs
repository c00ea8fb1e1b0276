//! Binary PBM (P4) images.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot render a {width}x{height} image")]
pub struct EmptyImage {
    pub width: usize,
    pub height: usize,
}

/// Renders rows of equal length; `true` is black. Rows are packed most
/// significant bit first and padded with zero bits to a whole byte.
pub fn render_pbm(grid: &[Vec<bool>]) -> Result<Vec<u8>, EmptyImage> {
    let height = grid.len();
    let width = grid.first().map_or(0, Vec::len);
    if width == 0 || height == 0 {
        return Err(EmptyImage { width, height });
    }
    assert!(grid.iter().all(|r| r.len() == width), "ragged grid");
    let mut out = format!("P4\n{width} {height}\n").into_bytes();
    for row in grid {
        for chunk in row.chunks(8) {
            let byte = chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)));
            out.push(byte);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_padding() {
        assert_eq!(render_pbm(&[vec![true]]).unwrap(), b"P4\n1 1\n\x80");
        assert_eq!(render_pbm(&[vec![false; 8]]).unwrap(), b"P4\n8 1\n\x00");
        assert_eq!(render_pbm(&[vec![true; 9]]).unwrap(), b"P4\n9 1\n\xff\x80");
        assert_eq!(
            render_pbm(&[]),
            Err(EmptyImage {
                width: 0,
                height: 0
            })
        );
        assert_eq!(
            render_pbm(&[vec![]]),
            Err(EmptyImage {
                width: 0,
                height: 1
            })
        );
    }
}
