//! Seeded generators for synthetic and adversarial tries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::trie::{CommonSuffixTrie, Direction, EdgeRow, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Grows a trie node by node, branching from a random node with the
    /// given probability and otherwise extending the newest node.
    Random,
    /// A single path; labels follow `pattern` cyclically when given,
    /// otherwise they are drawn at random.
    Path,
    FibonacciPath,
    ThueMorsePath,
    /// A path spine where each spine node gets an extra leaf with the given
    /// probability.
    Caterpillar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GenKind,
    /// Number of real nodes.
    pub size: usize,
    pub alphabet: u32,
    pub branching: f64,
    pub seed: u64,
    pub pattern: Option<Vec<Label>>,
}

impl GeneratorSpec {
    pub fn new(kind: GenKind, size: usize, alphabet: u32, branching: f64, seed: u64) -> Self {
        GeneratorSpec { kind, size, alphabet, branching, seed, pattern: None }
    }
}

/// Fibonacci word over {0, 1}, truncated to `len`.
pub fn fibonacci_word(len: usize) -> Vec<Label> {
    let (mut a, mut b) = (vec![0], vec![0, 1]);
    while b.len() < len {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = std::mem::replace(&mut b, next);
    }
    b.truncate(len);
    b
}

/// Thue–Morse word over {0, 1}, truncated to `len`.
pub fn thue_morse_word(len: usize) -> Vec<Label> {
    (0..len).map(|i: usize| i.count_ones() % 2).collect()
}

fn path_trie(word: &[Label]) -> Result<CommonSuffixTrie> {
    CommonSuffixTrie::from_strings(&[word], Direction::Rootward)
}

fn fresh_label(rng: &mut ChaCha8Rng, alphabet: u32, used: &[Label]) -> Label {
    loop {
        let l = rng.gen_range(0..alphabet);
        if !used.contains(&l) {
            return l;
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<CommonSuffixTrie> {
    if spec.size == 0 {
        return Err(Error::InvalidSpec("size must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&spec.branching) {
        return Err(Error::InvalidSpec("branching must lie in [0, 1]".into()));
    }
    let edges = spec.size - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GenKind::FibonacciPath => path_trie(&fibonacci_word(edges)),
        GenKind::ThueMorsePath => path_trie(&thue_morse_word(edges)),
        GenKind::Path => {
            let word: Vec<Label> = match &spec.pattern {
                Some(p) if p.is_empty() => return Err(Error::InvalidSpec("empty pattern".into())),
                Some(p) => p.iter().copied().cycle().take(edges).collect(),
                None => {
                    if spec.alphabet == 0 {
                        return Err(Error::InvalidSpec("alphabet must be at least 1".into()));
                    }
                    (0..edges).map(|_| rng.gen_range(0..spec.alphabet)).collect()
                }
            };
            path_trie(&word)
        }
        GenKind::Random => {
            if spec.alphabet == 0 {
                return Err(Error::InvalidSpec("alphabet must be at least 1".into()));
            }
            let mut kids: Vec<Vec<Label>> = vec![Vec::new()];
            let mut rows = vec![EdgeRow { child: 0, parent: None, label: 0 }];
            for id in 1..spec.size {
                let parent = if rng.gen_bool(spec.branching) {
                    loop {
                        let p = rng.gen_range(0..id);
                        if (kids[p].len() as u32) < spec.alphabet {
                            break p;
                        }
                    }
                } else {
                    // The newest node is always a leaf.
                    id - 1
                };
                let label = fresh_label(&mut rng, spec.alphabet, &kids[parent]);
                kids[parent].push(label);
                kids.push(Vec::new());
                rows.push(EdgeRow { child: id as u64, parent: Some(parent as u64), label });
            }
            CommonSuffixTrie::from_edges(&rows)
        }
        GenKind::Caterpillar => {
            if spec.alphabet == 0 || (spec.branching > 0.0 && spec.alphabet < 2) {
                return Err(Error::InvalidSpec("alphabet too small for the requested branching width".into()));
            }
            let mut rows = vec![EdgeRow { child: 0, parent: None, label: 0 }];
            let mut spine = 0u64;
            while rows.len() < spec.size {
                let id = rows.len() as u64;
                let label = rng.gen_range(0..spec.alphabet);
                rows.push(EdgeRow { child: id, parent: Some(spine), label });
                if rows.len() < spec.size && rng.gen_bool(spec.branching) {
                    let leaf = fresh_label(&mut rng, spec.alphabet, &[label]);
                    rows.push(EdgeRow { child: id + 1, parent: Some(spine), label: leaf });
                }
                spine = id;
            }
            CommonSuffixTrie::from_edges(&rows)
        }
    }
}

fn words_trie(words: &[Vec<Label>]) -> CommonSuffixTrie {
    CommonSuffixTrie::from_strings(words, Direction::Rootward).expect("fixture words are valid")
}

/// All words of length `k` over `{0, .., sigma - 1}`, which share every prefix.
fn complete_words(sigma: u32, k: u32) -> Vec<Vec<Label>> {
    (0..sigma.pow(k))
        .map(|mut x| {
            (0..k)
                .map(|_| {
                    let d = x % sigma;
                    x /= sigma;
                    d
                })
                .collect()
        })
        .collect()
}

/// Named small tries covering degenerate shapes and period-rich families.
pub fn fixtures() -> Vec<(String, CommonSuffixTrie)> {
    let mut out: Vec<(String, CommonSuffixTrie)> = Vec::new();
    let mut push = |name: String, t: CommonSuffixTrie| out.push((name, t));
    let root_only = CommonSuffixTrie::from_edges(&[EdgeRow { child: 1, parent: None, label: 0 }]).unwrap();
    push("root".into(), root_only);
    for n in [1usize, 2, 3, 8, 31, 64] {
        push(format!("unary-{n}"), path_trie(&vec![0; n]).unwrap());
    }
    for period in [2usize, 3, 5] {
        let w: Vec<Label> = (0..period * 9).map(|i| (i % period) as Label).collect();
        push(format!("periodic-{period}"), path_trie(&w).unwrap());
    }
    for n in [13usize, 55, 144] {
        push(format!("fibonacci-{n}"), path_trie(&fibonacci_word(n)).unwrap());
    }
    for n in [16usize, 64, 128] {
        push(format!("thue-morse-{n}"), path_trie(&thue_morse_word(n)).unwrap());
    }
    push("aabaabaa".into(), words_trie(&[b"aabaabaa".iter().map(|&b| Label::from(b)).collect()]));
    for (sigma, k) in [(2, 3), (2, 5), (3, 3), (4, 2)] {
        push(format!("complete-{sigma}-{k}"), words_trie(&complete_words(sigma, k)));
    }
    for sigma in [2u32, 4, 16] {
        let leaves: Vec<Vec<Label>> = (0..sigma).map(|l| vec![l]).collect();
        push(format!("star-{sigma}"), words_trie(&leaves));
    }
    // Powers of 01001 and of each of its rotations.
    let stems: Vec<Vec<Label>> = (1..=6usize)
        .flat_map(|k| {
            let base = [0, 1, 0, 0, 1];
            (0..base.len()).map(move |r| (0..k * 5).map(|i| base[(i + r) % 5]).collect::<Vec<Label>>())
        })
        .collect();
    push("rotations-01001".into(), words_trie(&stems));
    // Squares of every binary word up to length 4.
    let squares: Vec<Vec<Label>> =
        (1..=4).flat_map(|k| complete_words(2, k)).map(|w| [w.clone(), w].concat()).collect();
    push("binary-squares".into(), words_trie(&squares));
    // A "broom": a unary handle with a complete brush at the far end.
    let brush: Vec<Vec<Label>> = complete_words(2, 4).into_iter().map(|w| [w, vec![0; 12]].concat()).collect();
    push("broom".into(), words_trie(&brush));
    for seed in 0..4u64 {
        let spec = GeneratorSpec::new(GenKind::Caterpillar, 120, 2, 0.5, seed);
        push(format!("caterpillar-{seed}"), generate(&spec).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::write_edge_list;

    #[test]
    fn words() {
        assert_eq!(fibonacci_word(8), vec![0, 1, 0, 0, 1, 0, 1, 0]);
        assert_eq!(thue_morse_word(8), vec![0, 1, 1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn sizes_and_determinism() {
        for kind in
            [GenKind::Random, GenKind::Path, GenKind::FibonacciPath, GenKind::ThueMorsePath, GenKind::Caterpillar]
        {
            let spec = GeneratorSpec::new(kind, 57, 3, 0.3, 11);
            let a = generate(&spec).unwrap();
            assert_eq!(a.node_count(), 57, "{kind:?}");
            assert_eq!(write_edge_list(&a), write_edge_list(&generate(&spec).unwrap()));
        }
    }

    #[test]
    fn path_pattern() {
        let mut spec = GeneratorSpec::new(GenKind::Path, 7, 2, 0.0, 0);
        spec.pattern = Some(vec![97, 98]);
        let t = generate(&spec).unwrap();
        let leaf = t.nodes().last().unwrap();
        assert_eq!(t.suffix(leaf)[..6], [97, 98, 97, 98, 97, 98]);
    }

    #[test]
    fn bad_specs() {
        assert!(generate(&GeneratorSpec::new(GenKind::Caterpillar, 10, 1, 0.5, 0)).is_err());
        assert!(generate(&GeneratorSpec::new(GenKind::Random, 10, 0, 0.5, 0)).is_err());
        assert!(generate(&GeneratorSpec::new(GenKind::Random, 0, 2, 0.5, 0)).is_err());
        assert!(generate(&GeneratorSpec::new(GenKind::Random, 10, 2, 1.5, 0)).is_err());
    }

    #[test]
    fn sibling_labels_distinct_with_full_alphabet() {
        let t = generate(&GeneratorSpec::new(GenKind::Random, 500, 2, 0.9, 3)).unwrap();
        for v in t.nodes() {
            assert!(t.children(v).len() <= 2);
        }
    }
}
