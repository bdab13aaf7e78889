//! Permutations of `{0..m}` in one-line notation, reduced words and braid moves.

use std::collections::{HashMap, VecDeque};

/// `w = s_{l_1} s_{l_2} ... s_{l_r}` as one-line notation `w[p] = w(p)`.
pub fn word_to_perm(word: &[u8], m: usize) -> Vec<u8> {
    let mut w: Vec<u8> = (0..m as u8).collect();
    for &l in word {
        // right multiplication by s_l swaps positions
        w.swap(l as usize, l as usize + 1);
    }
    w
}

pub fn inversions(w: &[u8]) -> usize {
    let mut n = 0;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if w[a] > w[b] {
                n += 1;
            }
        }
    }
    n
}

/// `w . i` with `(w . i)[w(p)] = i[p]`.
pub fn act_on_seq<T: Copy + Default>(w: &[u8], seq: &[T]) -> Vec<T> {
    let mut out = vec![T::default(); seq.len()];
    for (p, &x) in seq.iter().enumerate() {
        out[w[p] as usize] = x;
    }
    out
}

/// Target sequence of `tau_word 1_seq`.
pub fn word_target<T: Copy>(word: &[u8], seq: &[T]) -> Vec<T> {
    let mut s = seq.to_vec();
    for &l in word.iter().rev() {
        s.swap(l as usize, l as usize + 1);
    }
    s
}

/// The lexicographically smallest reduced word of `w`.
pub fn canonical_word(w: &[u8]) -> Vec<u8> {
    let mut w = w.to_vec();
    let m = w.len();
    let mut word = Vec::new();
    loop {
        let mut pos = vec![0usize; m];
        for (p, &v) in w.iter().enumerate() {
            pos[v as usize] = p;
        }
        // left descent l: w^{-1}(l) > w^{-1}(l+1)
        let Some(l) = (0..m.saturating_sub(1)).find(|&l| pos[l] > pos[l + 1]) else {
            break;
        };
        word.push(l as u8);
        // w <- s_l w: exchange the values l and l+1
        for v in w.iter_mut() {
            if *v as usize == l {
                *v = l as u8 + 1;
            } else if *v as usize == l + 1 {
                *v = l as u8;
            }
        }
    }
    word
}

pub fn is_canonical(word: &[u8], m: usize) -> bool {
    canonical_word(&word_to_perm(word, m)) == word
}

/// All permutations of `0..m`, in lexicographic order.
pub fn all_perms(m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::new();
    let mut used = vec![false; m];
    fn rec(m: usize, cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(m, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(m, &mut cur, &mut used, &mut out);
    out
}

/// A rewriting step on words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Swap letters at `p, p+1` (they differ by more than one).
    Commute(usize),
    /// Replace `aba` by `bab` at `p, p+1, p+2`.
    Braid(usize),
}

/// Where a move sequence leads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Plan {
    /// The word is reduced; the moves reach the canonical word.
    ToCanonical(Vec<Move>),
    /// The word is not reduced; the moves reach a word with equal adjacent letters at `p`.
    ToSquare(Vec<Move>, usize),
}

pub fn apply_move(word: &mut [u8], mv: Move) {
    match mv {
        Move::Commute(p) => word.swap(p, p + 1),
        Move::Braid(p) => {
            let (a, b) = (word[p], word[p + 1]);
            word[p] = b;
            word[p + 1] = a;
            word[p + 2] = b;
        }
    }
}

fn neighbours(word: &[u8]) -> Vec<(Move, Vec<u8>)> {
    let mut out = Vec::new();
    for p in 0..word.len().saturating_sub(1) {
        if word[p].abs_diff(word[p + 1]) > 1 {
            let mut w = word.to_vec();
            apply_move(&mut w, Move::Commute(p));
            out.push((Move::Commute(p), w));
        }
        if p + 2 < word.len() && word[p] == word[p + 2] && word[p].abs_diff(word[p + 1]) == 1 {
            let mut w = word.to_vec();
            apply_move(&mut w, Move::Braid(p));
            out.push((Move::Braid(p), w));
        }
    }
    out
}

fn square_at(word: &[u8]) -> Option<usize> {
    (0..word.len().saturating_sub(1)).find(|&p| word[p] == word[p + 1])
}

/// Breadth-first search for a shortest move sequence to the canonical word (reduced case)
/// or to a word containing a square (non-reduced case).
pub fn plan(word: &[u8], m: usize) -> Plan {
    let w = word_to_perm(word, m);
    let reduced = inversions(&w) == word.len();
    let target = canonical_word(&w);
    let done = |x: &[u8]| if reduced { x == target.as_slice() } else { square_at(x).is_some() };
    let mut parent: HashMap<Vec<u8>, Option<(Vec<u8>, Move)>> = HashMap::new();
    parent.insert(word.to_vec(), None);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        if done(&cur) {
            let mut moves = Vec::new();
            let mut node = cur.clone();
            while let Some(Some((prev, mv))) = parent.get(&node) {
                moves.push(*mv);
                node = prev.clone();
            }
            moves.reverse();
            return if reduced {
                Plan::ToCanonical(moves)
            } else {
                Plan::ToSquare(moves, square_at(&cur).unwrap())
            };
        }
        for (mv, next) in neighbours(&cur) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), mv)));
                queue.push_back(next);
            }
        }
    }
    unreachable!("braid and commutation moves connect reduced words and expose squares")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_words_are_reduced_and_lex_min() {
        for m in 1..=5 {
            for w in all_perms(m) {
                let c = canonical_word(&w);
                assert_eq!(word_to_perm(&c, m), w);
                assert_eq!(c.len(), inversions(&w));
            }
        }
        // longest element of S_3: s1 s2 s1 and s2 s1 s2; lex-min is 0 1 0
        assert_eq!(canonical_word(&[2, 1, 0]), vec![0, 1, 0]);
    }

    #[test]
    fn plans_reach_their_targets() {
        let m = 4;
        for word in [vec![1u8, 0, 1], vec![2, 0], vec![0, 1, 0, 1], vec![2, 1, 2, 0, 1, 0]] {
            let mut w = word.clone();
            match plan(&word, m) {
                Plan::ToCanonical(moves) => {
                    for mv in moves {
                        apply_move(&mut w, mv);
                    }
                    assert!(is_canonical(&w, m));
                }
                Plan::ToSquare(moves, p) => {
                    for mv in moves {
                        apply_move(&mut w, mv);
                    }
                    assert_eq!(w[p], w[p + 1]);
                }
            }
        }
    }

    #[test]
    fn sequence_action() {
        // s_0 . (a, b, c) = (b, a, c)
        let w = word_to_perm(&[0], 3);
        assert_eq!(act_on_seq(&w, &[5, 6, 7]), vec![6, 5, 7]);
        let word = [0u8, 1];
        assert_eq!(act_on_seq(&word_to_perm(&word, 3), &[5, 6, 7]), word_target(&word, &[5, 6, 7]));
    }
}
