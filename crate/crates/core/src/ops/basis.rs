use super::{OpGenerator, OpMonomial};
use crate::coefficients::Prime;

/// All admissible monomials of bidegree `(p, q)`, sorted.
///
/// Every admissible word has weight `(l-1) * sum(i_j)` and degree twice that
/// plus its number of Bocksteins, so `(p, q)` fixes both totals.
pub fn op_basis(p: i32, q: i32, prime: Prime) -> Vec<OpMonomial> {
    let l1 = prime.value() as i32 - 1;
    if q < 0 || p < 2 * q || q % l1 != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    extend(
        prime,
        0,
        (q / l1) as u32,
        (p - 2 * q) as u32,
        &mut Vec::new(),
        &mut out,
    );
    out.sort();
    out
}

/// All admissible monomials of cohomological degree `p`, any weight.
pub fn op_basis_in_degree(p: i32, prime: Prime) -> Vec<OpMonomial> {
    let mut out: Vec<OpMonomial> = (0..=p / 2).flat_map(|q| op_basis(p, q, prime)).collect();
    out.sort();
    out
}

// `acc` holds the word from the right end, reversed. `last` is the most
// recently placed power (0 before the first one).
fn extend(
    prime: Prime,
    last: u32,
    powers_left: u32,
    bocksteins_left: u32,
    acc: &mut Vec<OpGenerator>,
    out: &mut Vec<OpMonomial>,
) {
    for eps in 0..=bocksteins_left.min(1) {
        if eps == 1 {
            acc.push(OpGenerator::Bockstein);
        }
        let remaining_b = bocksteins_left - eps;
        if powers_left == 0 {
            if remaining_b == 0 {
                let word = acc.iter().rev().copied();
                out.push(OpMonomial::new(prime, word).expect("admissible words are nonzero"));
            }
        } else {
            let lower = (prime.value() * last + eps).max(1);
            for i in lower..=powers_left {
                acc.push(OpGenerator::Power(i));
                extend(prime, i, powers_left - i, remaining_b, acc, out);
                acc.pop();
            }
        }
        if eps == 1 {
            acc.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Bidegree;

    fn bidegree_of(word: &[OpGenerator], prime: Prime) -> Bidegree {
        word.iter()
            .fold(Bidegree::ZERO, |a, g| a + g.bidegree(prime))
    }

    fn squares(p: i32, q: i32) -> Vec<Vec<u32>> {
        op_basis(p, q, Prime::TWO)
            .iter()
            .map(|m| m.squares())
            .collect()
    }

    #[test]
    fn small_bases_at_two() {
        assert_eq!(squares(1, 0), vec![vec![1]]);
        let mut b31 = squares(3, 1);
        b31.sort();
        assert_eq!(b31, vec![vec![2, 1], vec![3]]);
        assert!(squares(2, 2).is_empty());
        assert!(squares(2, 0).is_empty());
        assert_eq!(squares(0, 0), vec![Vec::<u32>::new()]);
        assert!(op_basis(5, -1, Prime::TWO).is_empty());
    }

    #[test]
    fn enumerated_words_are_admissible_with_the_right_bidegree() {
        for prime in [Prime::TWO, Prime::THREE, Prime::FIVE] {
            for p in 0..40 {
                for q in 0..=p / 2 {
                    for m in op_basis(p, q, prime) {
                        assert!(m.is_admissible(), "{m}");
                        assert_eq!(m.bidegree(), Bidegree::new(p, q));
                        assert_eq!(bidegree_of(m.word(), prime), m.bidegree());
                    }
                }
            }
        }
    }

    #[test]
    fn brute_force_agrees_at_two() {
        // Every square sequence of degree p with each entry >= 1, filtered
        // by the classical condition a_i >= 2 a_{i+1}.
        fn all_sequences(p: u32) -> Vec<Vec<u32>> {
            if p == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=p {
                for mut rest in all_sequences(p - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        for p in 0..=14u32 {
            let mut expected: Vec<Vec<u32>> = all_sequences(p)
                .into_iter()
                .filter(|s| s.windows(2).all(|w| w[0] >= 2 * w[1]))
                .collect();
            expected.sort();
            let mut got: Vec<Vec<u32>> = op_basis_in_degree(p as i32, Prime::TWO)
                .iter()
                .map(|m| m.squares())
                .collect();
            got.sort();
            assert_eq!(got, expected, "degree {p}");
        }
    }
}
