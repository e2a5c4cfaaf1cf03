//! Synthetic corpora with planted synonym structure.
//!
//! Sentences are drawn from one of several topics. Each topic has content
//! words arranged in syntactic slots, separated by shared function words.
//! Every common content word has a rare partner that occurs, a few times,
//! only in a different topic; the pair is listed as mutual synonyms in the
//! generated lexicon. Without augmentation the partners never share
//! contexts, so their embeddings stay apart.

use std::collections::HashSet;

use rand::Rng;

use crate::eval_intrinsic::SimilarityDataset;
use crate::seed;

#[derive(Debug, Clone, PartialEq)]
pub struct ToyConfig {
    pub sentences: usize,
    pub topics: usize,
    pub slots: usize,
    pub words_per_slot: usize,
    pub function_words: usize,
    pub sentence_len: usize,
    /// Probability that a content token is a rare partner word.
    pub rare_rate: f64,
    pub function_rate: f64,
    pub seed: u64,
}

impl Default for ToyConfig {
    fn default() -> Self {
        ToyConfig {
            sentences: 500,
            topics: 6,
            slots: 4,
            words_per_slot: 4,
            function_words: 5,
            sentence_len: 10,
            rare_rate: 0.05,
            function_rate: 0.2,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToyCorpus {
    pub text: String,
    pub lexicon_tsv: String,
    /// `(common word, rare partner)`.
    pub synonym_pairs: Vec<(String, String)>,
    /// Synonym pairs scored 1, random non-synonym content pairs scored 0.
    pub similarity: SimilarityDataset,
}

/// Lowercase letters-only name for an index: 0 → "a", 25 → "z", 26 → "ba".
fn letters(mut n: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (n % 26) as u8);
        n /= 26;
        if n == 0 {
            break;
        }
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

pub fn generate(config: &ToyConfig) -> ToyCorpus {
    let ToyConfig {
        topics,
        slots,
        words_per_slot: m,
        ..
    } = *config;
    let common = |t: usize, s: usize, i: usize| format!("com{}", letters((t * slots + s) * m + i));
    let rare = |t: usize, s: usize, i: usize| format!("rar{}", letters((t * slots + s) * m + i));
    // The partner of common (t, s, i) appears inside topic (t + topics/2).
    let home = |t: usize| (t + topics / 2) % topics;
    let function: Vec<String> = (0..config.function_words)
        .map(|i| format!("fun{}", letters(i)))
        .collect();

    let mut rng = seed::rng(config.seed, "toy-corpus", 0);
    let mut text = String::new();
    for _ in 0..config.sentences {
        let t = rng.random_range(0..topics);
        let mut words = Vec::with_capacity(config.sentence_len);
        for pos in 0..config.sentence_len {
            if !function.is_empty() && rng.random::<f64>() < config.function_rate {
                words.push(function[rng.random_range(0..function.len())].clone());
                continue;
            }
            let s = pos % slots;
            let i = rng.random_range(0..m);
            if rng.random::<f64>() < config.rare_rate {
                // A rare word homed in topic t belongs to a common word of the
                // topic that maps onto t.
                let owner = (0..topics).find(|&o| home(o) == t).unwrap_or(t);
                words.push(rare(owner, s, i));
            } else {
                words.push(common(t, s, i));
            }
        }
        let mut sentence = words.join(" ");
        if let Some(first) = sentence.get_mut(0..1) {
            first.make_ascii_uppercase();
        }
        text.push_str(&sentence);
        text.push_str(". ");
    }

    let mut lexicon_tsv = String::from("#synlex v1\n");
    let mut synonym_pairs = Vec::new();
    for t in 0..topics {
        for s in 0..slots {
            for i in 0..m {
                let (a, b) = (common(t, s, i), rare(t, s, i));
                lexicon_tsv.push_str(&format!("{a}\tnoun\t{b}\n{b}\tnoun\t{a}\n"));
                synonym_pairs.push((a, b));
            }
        }
    }

    let mut rng = seed::rng(config.seed, "toy-similarity", 0);
    let content: Vec<&String> = synonym_pairs.iter().flat_map(|(a, b)| [a, b]).collect();
    let synonyms: HashSet<(&str, &str)> = synonym_pairs
        .iter()
        .flat_map(|(a, b)| [(a.as_str(), b.as_str()), (b.as_str(), a.as_str())])
        .collect();
    let mut raw: Vec<(String, String, f64)> = synonym_pairs
        .iter()
        .map(|(a, b)| (a.clone(), b.clone(), 1.0))
        .collect();
    let mut seen = HashSet::new();
    while raw.len() < 2 * synonym_pairs.len() {
        let a = content[rng.random_range(0..content.len())];
        let b = content[rng.random_range(0..content.len())];
        if a == b
            || synonyms.contains(&(a.as_str(), b.as_str()))
            || !seen.insert((a.min(b), a.max(b)))
        {
            continue;
        }
        raw.push((a.clone(), b.clone(), 0.0));
    }
    let similarity = SimilarityDataset::new("toy-similarity", raw).expect("finite scores");

    ToyCorpus {
        text,
        lexicon_tsv,
        synonym_pairs,
        similarity,
    }
}

impl ToyCorpus {
    /// Similarity dataset as a WordSim-style TSV.
    pub fn similarity_tsv(&self) -> String {
        let mut out = String::from("word1\tword2\tscore\n");
        for (a, b, s) in &self.similarity.pairs {
            out.push_str(&format!("{a}\t{b}\t{s}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_vocabulary, tokenize_str};
    use crate::lexicon::SynonymLexicon;

    #[test]
    fn letters_are_alphabetic() {
        assert_eq!(letters(0), "a");
        assert_eq!(letters(25), "z");
        assert_eq!(letters(26), "ba");
    }

    #[test]
    fn generates_requested_structure() {
        let toy = generate(&ToyConfig::default());
        let corpus = tokenize_str(&toy.text);
        assert_eq!(corpus.sentences.len(), 500);
        assert!(corpus.sentences.iter().all(|s| s.len() == 10));
        let (lex, report) = SynonymLexicon::parse(&toy.lexicon_tsv).unwrap();
        assert_eq!(report.dropped(), 0);
        assert_eq!(toy.synonym_pairs.len(), 96);
        let (a, b) = &toy.synonym_pairs[0];
        assert_eq!(lex.synonyms(a), vec![b.as_str()]);
        assert_eq!(toy.similarity.pairs.len(), 192);
        let vocab = build_vocabulary(&corpus, 1).unwrap();
        assert!(vocab.contains(a));
        assert_eq!(generate(&ToyConfig::default()), toy);
    }
}
