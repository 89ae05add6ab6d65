use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Vector;

/// Exact linear rank of a list of equal-length vectors.
///
/// Rows are first cleared of denominators, then reduced with Bareiss
/// fraction-free elimination so every intermediate entry stays an integer.
pub fn rank(vectors: &[Vector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.dim();
    let mut rows: Vec<Vec<BigInt>> = vectors.iter().map(integer_row).collect();

    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            let lead = rows[r][col].clone();
            for c in col..cols {
                let v = (&pivot * &rows[r][c] - &lead * &rows[rank][c]) / &prev_pivot;
                rows[r][c] = v;
            }
        }
        prev_pivot = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn integer_row(v: &Vector) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    v.iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}
