use betalink::wqo::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=2, 0..=max_len)
}

fn all_words(max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<u32>| [1u32, 2].map(|a| [w.clone(), vec![a]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn exhaustive_pair(seq: &[Vec<u32>]) -> Option<(usize, usize)> {
    for k in 0..seq.len() {
        for l in k + 1..seq.len() {
            if is_subsequence(&seq[k], &seq[l]) {
                return Some((k + 1, l + 1));
            }
        }
    }
    None
}

/// Subsequence test by dynamic programming over prefixes.
fn is_subsequence(i: &[u32], j: &[u32]) -> bool {
    let mut ok = vec![vec![false; j.len() + 1]; i.len() + 1];
    for b in 0..=j.len() {
        ok[0][b] = true;
    }
    for a in 1..=i.len() {
        for b in 1..=j.len() {
            ok[a][b] = ok[a][b - 1] || (i[a - 1] == j[b - 1] && ok[a - 1][b - 1]);
        }
    }
    ok[i.len()][j.len()]
}

#[test]
fn greedy_matches_dynamic_programming() {
    let words = all_words(5);
    for i in &words {
        for j in &words {
            assert_eq!(embeds(i, j), is_subsequence(i, j), "{i:?} {j:?}");
        }
    }
}

#[test]
fn spec_pairs() {
    assert_eq!(find_embedded_pair(&[vec![1, 2], vec![2, 1]]).unwrap(), None);
    assert_eq!(find_embedded_pair(&[vec![1, 2], vec![2, 1], vec![1, 1, 2, 1]]).unwrap(), Some((1, 3)));
    assert!(find_embedded_pair(&[vec![1, 3]]).is_err());
    assert_eq!(find_embedded_pair(&[]).unwrap(), None);
}

#[test]
fn long_random_sequences_contain_pairs() {
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(7);
    let seq: Vec<Vec<u32>> = (0..10_000)
        .map(|_| {
            let n = rng.gen_range(0..=12);
            (0..n).map(|_| rng.gen_range(1..=2)).collect()
        })
        .collect();
    let pair = find_embedded_pair(&seq).unwrap().unwrap();
    assert_eq!(Some(pair), exhaustive_pair(&seq));
}

#[test]
fn audit_fixtures() {
    let t = MuTable::from_json(r#"{"entries":[{"I":[1,1,2,2],"mu":1}]}"#).unwrap();
    let a = mu_audit(&t);
    assert_eq!((a.rows[0].g.clone(), a.rows[0].mu_bar.clone()), (BigInt::zero(), BigInt::from(1)));

    let t = MuTable::from_json(r#"{"entries":[{"I":[1,1,2,2],"mu":2},{"I":[1,1,1,1,2,2],"mu":3}]}"#).unwrap();
    let a = mu_audit(&t);
    assert_eq!(a.rows[1].index, vec![1, 1, 2, 2]);
    assert_eq!((a.rows[0].g.clone(), a.rows[0].mu_bar.clone()), (BigInt::from(2), BigInt::from(1)));
    assert!(a.chain_ok());
    assert_eq!(a.nonzero().len(), 2);

    let v = a.to_json();
    assert_eq!(v["chain_ok"], true);
    assert_eq!(v["rows"][0]["g"], 2);
    assert!(MuTable::from_json(r#"{"entries":[{"I":[1],"mu":1.5}]}"#).is_err());
    assert!(MuTable::from_json("{").is_err());
}

// Short indices carry arbitrary values; every longer one is a multiple of the
// gcd below it, so only short indices keep nonzero residues.
#[test]
fn constructed_fixture_has_short_support() {
    let mut t = MuTable::new();
    let words = all_words(5);
    let mut seed = 11i64;
    for w in &words {
        if w.is_empty() {
            continue;
        }
        seed = (seed * 48271) % 2147483647;
        let v = BigInt::from(seed % 17 + 2);
        if w.len() <= 2 {
            t.insert(w.clone(), v);
        } else {
            let g = t
                .entries
                .iter()
                .filter(|(j, _)| properly_embeds(j, w))
                .fold(BigInt::zero(), |g, (_, m)| g.gcd(m));
            t.insert(w.clone(), g * v);
        }
    }
    let a = mu_audit(&t);
    assert!(a.chain_ok());
    assert!(a.nonzero().iter().all(|i| i.len() <= 2));
    assert!(!a.nonzero().is_empty());
}

#[test]
fn strict_divisibility() {
    let b = BigInt::from;
    assert!(strictly_divides(&b(2), &b(0)));
    assert!(strictly_divides(&b(-3), &b(6)));
    assert!(!strictly_divides(&b(3), &b(-3)));
    assert!(!strictly_divides(&b(0), &b(0)));
    assert!(!strictly_divides(&b(4), &b(6)));
}

proptest! {
    #[test]
    fn embedding_is_reflexive(i in word(10)) {
        prop_assert!(embeds(&i, &i));
        prop_assert!(!properly_embeds(&i, &i));
    }

    #[test]
    fn embedding_is_transitive((i, j, k) in (word(4), word(7), word(12))) {
        if embeds(&i, &j) && embeds(&j, &k) {
            prop_assert!(embeds(&i, &k));
        }
        let mid = [i.clone(), j.clone()].concat();
        let top = [i.clone(), k.clone(), j.clone()].concat();
        prop_assert!(embeds(&i, &mid) && embeds(&mid, &top) && embeds(&i, &top));
    }

    #[test]
    fn embedding_is_antisymmetric((i, j) in (word(6), word(6))) {
        if i.len() != j.len() {
            prop_assert!(!(embeds(&i, &j) && embeds(&j, &i)));
        }
        if embeds(&i, &j) && embeds(&j, &i) {
            prop_assert_eq!(&i, &j);
        }
    }

    #[test]
    fn pair_finder_matches_exhaustive(seq in prop::collection::vec(word(6), 0..=8)) {
        prop_assert_eq!(find_embedded_pair(&seq).unwrap(), exhaustive_pair(&seq));
    }

    #[test]
    fn audit_chain_always_holds(entries in prop::collection::vec((word(5), -12i64..=12), 0..24)) {
        let mut t = MuTable::new();
        for (w, m) in entries {
            t.insert(w, m);
        }
        let a = mu_audit(&t);
        prop_assert!(a.chain_ok());
        for r in &a.rows {
            prop_assert!(r.g >= BigInt::zero());
            prop_assert!(r.g.is_zero() || (r.mu_bar >= BigInt::zero() && r.mu_bar < r.g));
        }
    }
}
