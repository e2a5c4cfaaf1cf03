//! Synonym augmentation: substitute a sampled synonym for candidate focus
//! words and mix the resulting pairs with natural pairs at a target ratio.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::{index, SliceRandom};

use crate::corpus::Vocabulary;
use crate::error::{Error, Result};
use crate::lexicon::{SynonymLexicon, SynonymTable};
use crate::pairgen::{Origin, WordPair};
use crate::{par, seed};

/// Augmentation ratios of the published ratio sweep.
pub const RATIO_SWEEP: [f64; 10] = [0.0, 0.02, 0.035, 0.06, 0.10, 0.16, 0.25, 0.37, 0.50, 0.64];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AugmentationPlan {
    ratio: f64,
    pub seed: u64,
}

impl AugmentationPlan {
    pub fn new(ratio: f64, seed: u64) -> Result<Self> {
        if !(0.0..1.0).contains(&ratio) {
            return Err(Error::Domain(format!(
                "augmentation ratio {ratio} not in [0, 1)"
            )));
        }
        Ok(AugmentationPlan { ratio, seed })
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// Number of augmented pairs needed next to `natural` natural pairs.
    pub fn augmented_count(&self, natural: usize) -> usize {
        (self.ratio * natural as f64 / (1.0 - self.ratio)).round() as usize
    }
}

/// Augmented pairs plus, for each, the natural focus word it replaced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AugmentedPairs {
    pub pairs: Vec<WordPair>,
    pub sources: Vec<u32>,
}

impl AugmentedPairs {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Split naturally-ordered pairs into focus occurrences.
///
/// Pair files carry no token offsets, so an occurrence is recovered as a
/// maximal run of pairs sharing a focus id whose positions never decrease and
/// never repeat more than twice (left and right neighbour).
pub fn focus_occurrences(pairs: &[WordPair]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut repeats = 0;
    for i in 1..=pairs.len() {
        let split = match pairs.get(i) {
            None => true,
            Some(p) => {
                let prev = &pairs[i - 1];
                if p.focus != prev.focus || p.position < prev.position {
                    true
                } else if p.position == prev.position {
                    repeats += 1;
                    repeats >= 2
                } else {
                    repeats = 0;
                    false
                }
            }
        };
        if split {
            out.push(start..i);
            start = i;
            repeats = 0;
        }
    }
    out
}

/// Draw one synonym per candidate focus occurrence and pair it with every
/// surviving context of that occurrence. Occurrence `i` uses sub-stream
/// `("augment", i)`.
pub fn generate_augmented_pairs(
    natural: &[WordPair],
    lexicon: &SynonymLexicon,
    vocab: &Vocabulary,
    seed: u64,
) -> Result<AugmentedPairs> {
    if natural.iter().any(|p| p.origin != Origin::Natural) {
        return Err(Error::Invalid(
            "augmentation input must be natural pairs".into(),
        ));
    }
    if let Some(p) = natural
        .iter()
        .find(|p| p.focus as usize >= vocab.len() || p.context as usize >= vocab.len())
    {
        return Err(Error::Invalid(format!(
            "pair {p:?} references an id outside the vocabulary"
        )));
    }
    let table = SynonymTable::new(lexicon, vocab);
    let occurrences = focus_occurrences(natural);
    let per_occ = par::map(&occurrences, |i, range| {
        let focus = natural[range.start].focus;
        let Some(sampler) = table.get(focus) else {
            return Vec::new();
        };
        let mut rng = seed::rng(seed, "augment", i as u64);
        let syn = sampler.sample(&mut rng);
        natural[range.clone()]
            .iter()
            .map(|p| {
                (
                    WordPair {
                        focus: syn,
                        context: p.context,
                        position: p.position,
                        origin: Origin::Augmented,
                    },
                    focus,
                )
            })
            .collect()
    });
    let (pairs, sources) = per_occ.into_iter().flatten().unzip();
    Ok(AugmentedPairs { pairs, sources })
}

/// Shuffled training set with its augmentation provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedDataset {
    pub pairs: Vec<WordPair>,
    /// Distinct `(replaced focus, synonym)` pairs behind the kept augmented pairs.
    pub substitutions: Vec<(u32, u32)>,
}

impl MixedDataset {
    pub fn augmented_fraction(&self) -> f64 {
        let aug = self
            .pairs
            .iter()
            .filter(|p| p.origin == Origin::Augmented)
            .count();
        aug as f64 / self.pairs.len() as f64
    }
}

/// Keep all natural pairs, subsample the augmented pool without replacement to
/// hit the plan's ratio, then shuffle.
pub fn mix(
    natural: &[WordPair],
    augmented: &AugmentedPairs,
    plan: &AugmentationPlan,
) -> Result<MixedDataset> {
    if natural.is_empty() {
        return Err(Error::Invalid("no natural pairs to mix".into()));
    }
    let m = plan.augmented_count(natural.len());
    if augmented.len() < m {
        let a = augmented.len();
        return Err(Error::InsufficientAugmentation {
            needed: m,
            available: a,
            max_ratio: a as f64 / (natural.len() + a) as f64,
        });
    }
    let mut rng = seed::rng(plan.seed, "mix-sample", 0);
    let mut picked = index::sample(&mut rng, augmented.len(), m).into_vec();
    picked.sort_unstable();

    let mut pairs = Vec::with_capacity(natural.len() + m);
    pairs.extend_from_slice(natural);
    let mut seen = HashSet::new();
    let mut substitutions = Vec::new();
    for &i in &picked {
        let p = augmented.pairs[i];
        pairs.push(p);
        let sub = (augmented.sources[i], p.focus);
        if seen.insert(sub) {
            substitutions.push(sub);
        }
    }
    pairs.shuffle(&mut seed::rng(plan.seed, "mix-shuffle", 0));
    Ok(MixedDataset {
        pairs,
        substitutions,
    })
}

pub fn substitutions_to_string(subs: &[(u32, u32)]) -> String {
    let mut out = String::from("#subs v1\n");
    for (f, s) in subs {
        let _ = writeln!(out, "{f} {s}");
    }
    out
}

pub fn parse_substitutions(text: &str) -> Result<Vec<(u32, u32)>> {
    const WHAT: &str = "substitution file";
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace().map(str::parse::<u32>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(f)), Some(Ok(s)), None) => out.push((f, s)),
            _ => {
                return Err(Error::parse(
                    WHAT,
                    i + 1,
                    "expected <focus_id> <synonym_id>",
                ))
            }
        }
    }
    Ok(out)
}

pub fn write_substitutions(path: &Path, subs: &[(u32, u32)]) -> Result<()> {
    std::fs::write(path, substitutions_to_string(subs)).map_err(|e| Error::io(path, e))
}

pub fn read_substitutions(path: &Path) -> Result<Vec<(u32, u32)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_substitutions(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_vocabulary, encode, tokenize_str};
    use crate::pairgen::generate_pairs;
    use proptest::prelude::*;

    fn fig1() -> (Vocabulary, SynonymLexicon) {
        let corpus = tokenize_str("a priceless gem of the sea. a jewel.");
        let vocab = build_vocabulary(&corpus, 1).unwrap();
        let (lex, _) = SynonymLexicon::parse("gem\tnoun\tjewel\njewel\tnoun\tgem\n").unwrap();
        (vocab, lex)
    }

    #[test]
    fn figure_one_pipeline() {
        let (vocab, lex) = fig1();
        let id = |w| vocab.id(w).unwrap();
        let natural: Vec<WordPair> = ["a", "priceless", "of"]
            .iter()
            .zip([2, 1, 1])
            .map(|(w, c)| WordPair::natural(id("gem"), id(w), c))
            .collect();
        let aug = generate_augmented_pairs(&natural, &lex, &vocab, 5).unwrap();
        let got: Vec<(u32, u32)> = aug.pairs.iter().map(|p| (p.focus, p.context)).collect();
        assert_eq!(
            got,
            vec![
                (id("jewel"), id("a")),
                (id("jewel"), id("priceless")),
                (id("jewel"), id("of"))
            ]
        );
        assert!(aug.sources.iter().all(|&s| s == id("gem")));
        assert!(aug.pairs.iter().all(|p| p.origin == Origin::Augmented));
    }

    #[test]
    fn non_candidates_and_empty_input() {
        let (vocab, lex) = fig1();
        let the = vocab.id("the").unwrap();
        let sea = vocab.id("sea").unwrap();
        let natural = vec![WordPair::natural(the, sea, 1)];
        assert!(generate_augmented_pairs(&natural, &lex, &vocab, 1)
            .unwrap()
            .is_empty());
        assert!(generate_augmented_pairs(&[], &lex, &vocab, 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn one_synonym_per_occurrence() {
        let text = "gem a b c d e f. gem x y z w v u.";
        let corpus = tokenize_str(text);
        let vocab = build_vocabulary(&corpus, 1).unwrap();
        let (lex, _) = SynonymLexicon::parse("gem\tnoun\ta\ngem\tnoun\tx\n").unwrap();
        let natural = generate_pairs(&encode(&corpus, &vocab), 3, 1).unwrap();
        for s in 0..40 {
            let aug = generate_augmented_pairs(&natural, &lex, &vocab, s).unwrap();
            let gem = vocab.id("gem").unwrap();
            let per_occ: Vec<_> = focus_occurrences(&natural)
                .into_iter()
                .filter(|r| natural[r.start].focus == gem)
                .collect();
            assert_eq!(per_occ.len(), 2);
            let mut offset = 0;
            for r in per_occ {
                let syns: HashSet<u32> = aug.pairs[offset..offset + r.len()]
                    .iter()
                    .map(|p| p.focus)
                    .collect();
                assert_eq!(syns.len(), 1);
                offset += r.len();
            }
        }
    }

    #[test]
    fn occurrences_split_on_position_reset() {
        let p = |f, c| WordPair::natural(f, 9, c);
        let pairs = [
            p(1, 1),
            p(1, 1),
            p(1, 2),
            p(1, 1),
            p(1, 1),
            p(1, 1),
            p(2, 1),
        ];
        assert_eq!(focus_occurrences(&pairs), vec![0..3, 3..5, 5..6, 6..7]);
        assert!(focus_occurrences(&[]).is_empty());
    }

    fn pool(n: usize) -> AugmentedPairs {
        AugmentedPairs {
            pairs: (0..n)
                .map(|i| WordPair {
                    focus: 1000 + (i % 7) as u32,
                    context: i as u32,
                    position: 1,
                    origin: Origin::Augmented,
                })
                .collect(),
            sources: (0..n).map(|i| (i % 7) as u32).collect(),
        }
    }

    fn naturals(n: usize) -> Vec<WordPair> {
        (0..n).map(|i| WordPair::natural(i as u32, 0, 1)).collect()
    }

    #[test]
    fn quarter_ratio_composition() {
        let plan = AugmentationPlan::new(0.25, 3).unwrap();
        let out = mix(&naturals(7500), &pool(9000), &plan).unwrap();
        assert_eq!(out.pairs.len(), 10_000);
        let aug = out
            .pairs
            .iter()
            .filter(|p| p.origin == Origin::Augmented)
            .count();
        assert_eq!(aug, 2500);
        assert_eq!(out.augmented_fraction(), 0.25);
        assert_eq!(out.substitutions.len(), 7);
    }

    #[test]
    fn zero_ratio_is_shuffled_naturals() {
        let nat = naturals(100);
        let plan = AugmentationPlan::new(0.0, 3).unwrap();
        let out = mix(&nat, &pool(5), &plan).unwrap();
        assert_ne!(out.pairs, nat);
        let mut sorted = out.pairs.clone();
        sorted.sort_by_key(|p| p.focus);
        assert_eq!(sorted, nat);
        assert!(out.substitutions.is_empty());
    }

    #[test]
    fn insufficient_pool_reports_max_ratio() {
        let plan = AugmentationPlan::new(0.25, 3).unwrap();
        match mix(&naturals(100), &pool(10), &plan) {
            Err(Error::InsufficientAugmentation {
                needed,
                available,
                max_ratio,
            }) => {
                assert_eq!(needed, 33);
                assert_eq!(available, 10);
                assert!((max_ratio - 10.0 / 110.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(mix(&[], &pool(10), &AugmentationPlan::new(0.0, 1).unwrap()).is_err());
        assert!(AugmentationPlan::new(1.0, 1).is_err());
        assert!(AugmentationPlan::new(-0.1, 1).is_err());
    }

    #[test]
    fn substitutions_file_round_trip() {
        let subs = vec![(1, 2), (3, 4)];
        assert_eq!(
            parse_substitutions(&substitutions_to_string(&subs)).unwrap(),
            subs
        );
        assert!(parse_substitutions("1 2 3\n").is_err());
    }

    proptest! {
        #[test]
        fn fraction_within_rounding(n in 1usize..3000, r in 0.0f64..0.7, seed in any::<u64>()) {
            let plan = AugmentationPlan::new(r, seed).unwrap();
            let m = plan.augmented_count(n);
            let out = mix(&naturals(n), &pool(m + 3), &plan).unwrap();
            prop_assert_eq!(out.pairs.len(), n + m);
            prop_assert!((out.augmented_fraction() - r).abs() <= 1.0 / (n + m) as f64);
            let again = mix(&naturals(n), &pool(m + 3), &plan).unwrap();
            prop_assert_eq!(out, again);
        }

        #[test]
        fn augmented_pairs_mirror_natural_ones(seed in any::<u64>()) {
            let corpus = tokenize_str("the gem shines in a jewel box. a stone and a gem. the jewel fell.");
            let vocab = build_vocabulary(&corpus, 1).unwrap();
            let (lex, _) = SynonymLexicon::parse(
                "gem\tnoun\tjewel\ngem\tnoun\tstone\njewel\tnoun\tgem\nshines\tverb\tglitters\n",
            ).unwrap();
            let natural = generate_pairs(&encode(&corpus, &vocab), 5, seed).unwrap();
            let aug = generate_augmented_pairs(&natural, &lex, &vocab, seed).unwrap();
            for (p, &src) in aug.pairs.iter().zip(&aug.sources) {
                let syns = lex.synonyms(vocab.word(src));
                prop_assert!(syns.contains(&vocab.word(p.focus)));
                prop_assert!(natural.iter().any(|n| n.focus == src && n.context == p.context && n.position == p.position));
            }
        }
    }
}
