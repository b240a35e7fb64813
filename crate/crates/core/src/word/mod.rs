//! Five-letter words, the LIFO reduction, and the lazily grown bi-infinite
//! word.

mod letter;
mod params;
mod reduce;
mod sampler;
mod window;

pub use letter::{parse_word, word_to_string, Burger, Letter};
pub use params::ModelParams;
pub use reduce::{is_reducible, match_word, reduce, ReducedWord, StackEngine, UNMATCHED};
pub use sampler::{letter_from_uniform, sample_letter, sample_range};
pub use window::{Interval, IntervalChain, OrderCounts, WordSlice, WordWindow, DEFAULT_CAP};

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    // Independent reduction: apply local cancellation and commutation rules
    // until nothing changes. `aA, bB, aF, bF` cancel; `aB -> Ba`, `bA -> Ab`.
    fn rewrite_step(w: &[char]) -> Vec<Vec<char>> {
        let mut out = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            let pair = (w[i], w[i + 1]);
            let repl: Option<&[char]> = match pair {
                ('a', 'A') | ('b', 'B') | ('a', 'F') | ('b', 'F') => Some(&[]),
                ('a', 'B') => Some(&['B', 'a']),
                ('b', 'A') => Some(&['A', 'b']),
                _ => None,
            };
            if let Some(r) = repl {
                let mut v = w[..i].to_vec();
                v.extend_from_slice(r);
                v.extend_from_slice(&w[i + 2..]);
                out.push(v);
            }
        }
        out
    }

    fn rewrite_normal_form(w: &str) -> String {
        let mut cur: Vec<char> = w.chars().collect();
        // leftmost rewriting until irreducible
        while let Some(next) = rewrite_step(&cur).into_iter().next() {
            cur = next;
        }
        cur.into_iter().collect()
    }

    fn all_normal_forms(w: &str) -> HashSet<String> {
        let mut seen = HashSet::new();
        let mut stack = vec![w.chars().collect::<Vec<_>>()];
        let mut forms = HashSet::new();
        while let Some(cur) = stack.pop() {
            if !seen.insert(cur.clone()) {
                continue;
            }
            let next = rewrite_step(&cur);
            if next.is_empty() {
                forms.insert(cur.iter().collect());
            }
            stack.extend(next);
        }
        forms
    }

    fn all_words(n: usize) -> Vec<String> {
        let alphabet = ['a', 'b', 'A', 'B', 'F'];
        let mut words = vec![String::new()];
        for _ in 0..n {
            words = words
                .iter()
                .flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}")))
                .collect();
        }
        words
    }

    #[test]
    fn stack_reduction_matches_rewriting_up_to_length_8() {
        for n in 0..=8 {
            for w in all_words(n) {
                let word = parse_word(&w).unwrap();
                assert_eq!(reduce(&word).to_string(), rewrite_normal_form(&w), "word {w}");
            }
        }
    }

    #[test]
    fn rewriting_is_confluent_up_to_length_6() {
        for n in 0..=6 {
            for w in all_words(n) {
                let forms = all_normal_forms(&w);
                assert_eq!(forms.len(), 1, "word {w} has forms {forms:?}");
                let word = parse_word(&w).unwrap();
                assert!(forms.contains(&reduce(&word).to_string()));
            }
        }
    }

    #[test]
    fn reducible_words_of_length_2n() {
        // rooted planar maps with n edges times 2^n spanning-subgraph choices
        let expected = [1usize, 4, 36, 432];
        for (n, &want) in expected.iter().enumerate() {
            let got = all_words(2 * n)
                .iter()
                .filter(|w| is_reducible(&parse_word(w).unwrap()))
                .count();
            assert_eq!(got, want, "n = {n}");
        }
    }
}
