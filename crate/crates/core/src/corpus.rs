//! Sentence/word tokenization and frequency-pruned vocabularies.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::par;

/// Ordered sentences of lowercase word tokens. Contexts never span sentences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenizedCorpus {
    pub sentences: Vec<Vec<String>>,
}

/// Sentences of vocabulary ids.
pub type EncodedCorpus = Vec<Vec<u32>>;

impl TokenizedCorpus {
    pub fn num_tokens(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn extend(&mut self, other: TokenizedCorpus) {
        self.sentences.extend(other.sentences);
    }

    /// One sentence per line, tokens separated by a single space.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.sentences {
            out.push_str(&s.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_lines(text: &str) -> TokenizedCorpus {
        let sentences = text
            .lines()
            .map(|l| l.split_whitespace().map(str::to_owned).collect::<Vec<_>>())
            .filter(|s| !s.is_empty())
            .collect();
        TokenizedCorpus { sentences }
    }
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-')
}

/// Split a sentence's text into lowercase word tokens: maximal runs of
/// alphabetic characters, with apostrophes and hyphens kept only between two
/// letters.
pub fn words(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphabetic() {
            cur.extend(c.to_lowercase());
        } else if is_joiner(c)
            && !cur.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphabetic())
        {
            cur.push(c);
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Tokenize already-decoded text.
pub fn tokenize_str(text: &str) -> TokenizedCorpus {
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut iter = text.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        if !is_terminal(c) {
            continue;
        }
        let boundary = match iter.peek() {
            None => true,
            Some((_, n)) => n.is_whitespace(),
        };
        if boundary {
            let end = i + c.len_utf8();
            let toks = words(&text[start..end]);
            if !toks.is_empty() {
                sentences.push(toks);
            }
            start = end;
        }
    }
    let toks = words(&text[start..]);
    if !toks.is_empty() {
        sentences.push(toks);
    }
    TokenizedCorpus { sentences }
}

/// Tokenize raw bytes, failing on invalid UTF-8.
pub fn tokenize(bytes: &[u8]) -> Result<TokenizedCorpus> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Decode {
        offset: e.valid_up_to(),
    })?;
    Ok(tokenize_str(text))
}

/// Tokenize several files and concatenate them in the given order. A sentence
/// never continues across a file boundary.
pub fn tokenize_files<P: AsRef<Path> + Sync>(paths: &[P]) -> Result<TokenizedCorpus> {
    let parts = par::map(paths, |_, p| {
        let p = p.as_ref();
        let bytes = std::fs::read(p).map_err(|e| Error::io(p, e))?;
        tokenize(&bytes)
    });
    let mut corpus = TokenizedCorpus::default();
    for part in parts {
        corpus.extend(part?);
    }
    Ok(corpus)
}

/// Bidirectional word/id mapping with pre-pruning corpus counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    words: Vec<String>,
    counts: Vec<u64>,
    index: HashMap<String, u32>,
    min_count: u64,
}

impl Vocabulary {
    /// Build from `(word, count)` entries already in id order.
    pub fn from_entries(entries: Vec<(String, u64)>, min_count: u64) -> Result<Self> {
        let mut words = Vec::with_capacity(entries.len());
        let mut counts = Vec::with_capacity(entries.len());
        let mut index = HashMap::with_capacity(entries.len());
        for (w, c) in entries {
            if c == 0 {
                return Err(Error::Invalid(format!("word {w:?} has zero count")));
            }
            if index.insert(w.clone(), words.len() as u32).is_some() {
                return Err(Error::Invalid(format!("duplicate vocabulary word {w:?}")));
            }
            words.push(w);
            counts.push(c);
        }
        if words.is_empty() {
            return Err(Error::EmptyVocabulary { min_count });
        }
        Ok(Vocabulary {
            words,
            counts,
            index,
            min_count,
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn min_count(&self) -> u64 {
        self.min_count
    }

    pub fn id(&self, word: &str) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn word(&self, id: u32) -> &str {
        &self.words[id as usize]
    }

    pub fn count(&self, id: u32) -> u64 {
        self.counts[id as usize]
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("#vocab v1 min_count={}\n", self.min_count);
        for (w, c) in self.words.iter().zip(&self.counts) {
            let _ = writeln!(out, "{w}\t{c}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        const WHAT: &str = "vocabulary file";
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(WHAT, 1, "missing header"))?;
        let min_count = header
            .strip_prefix("#vocab v1 min_count=")
            .and_then(|n| n.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::parse(WHAT, 1, format!("bad header {header:?}")))?;
        let mut entries = Vec::new();
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let (w, c) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(WHAT, i + 1, "expected <word>\\t<count>"))?;
            let c: u64 = c
                .trim()
                .parse()
                .map_err(|_| Error::parse(WHAT, i + 1, format!("bad count {c:?}")))?;
            entries.push((w.to_owned(), c));
        }
        Vocabulary::from_entries(entries, min_count)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_file_string()).map_err(|e| Error::io(path, e))
    }
}

pub fn word_counts(corpus: &TokenizedCorpus) -> HashMap<&str, u64> {
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for tok in corpus.sentences.iter().flatten() {
        *counts.entry(tok.as_str()).or_default() += 1;
    }
    counts
}

/// Keep words occurring at least `min_count` times. Ids follow descending
/// frequency, ties broken lexicographically.
pub fn build_vocabulary(corpus: &TokenizedCorpus, min_count: u64) -> Result<Vocabulary> {
    if min_count == 0 {
        return Err(Error::Domain("min_count must be at least 1".into()));
    }
    let mut kept: Vec<(&str, u64)> = word_counts(corpus)
        .into_iter()
        .filter(|&(_, c)| c >= min_count)
        .collect();
    kept.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let entries = kept.into_iter().map(|(w, c)| (w.to_owned(), c)).collect();
    Vocabulary::from_entries(entries, min_count)
}

/// Map tokens to ids, dropping out-of-vocabulary tokens and any sentence left
/// empty.
pub fn encode(corpus: &TokenizedCorpus, vocab: &Vocabulary) -> EncodedCorpus {
    corpus
        .sentences
        .iter()
        .map(|s| s.iter().filter_map(|t| vocab.id(t)).collect::<Vec<_>>())
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn decode(encoded: &EncodedCorpus, vocab: &Vocabulary) -> TokenizedCorpus {
    TokenizedCorpus {
        sentences: encoded
            .iter()
            .map(|s| s.iter().map(|&id| vocab.word(id).to_owned()).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn corpus(s: &[&[&str]]) -> TokenizedCorpus {
        TokenizedCorpus {
            sentences: s
                .iter()
                .map(|x| x.iter().map(|w| w.to_string()).collect())
                .collect(),
        }
    }

    #[test]
    fn splits_on_terminal_punctuation() {
        let c = tokenize_str("A gem. It shines!");
        assert_eq!(c, corpus(&[&["a", "gem"], &["it", "shines"]]));
    }

    #[test]
    fn empty_input() {
        assert!(tokenize(b"").unwrap().sentences.is_empty());
        assert!(tokenize_str("  ... !? ").sentences.is_empty());
    }

    #[test]
    fn internal_apostrophe_and_hyphen() {
        assert_eq!(tokenize_str("don't stop"), corpus(&[&["don't", "stop"]]));
        assert_eq!(
            words("well-known 'quoted' end- -x rock'n'roll"),
            vec!["well-known", "quoted", "end", "x", "rock'n'roll"]
        );
    }

    #[test]
    fn period_without_whitespace_does_not_split() {
        assert_eq!(tokenize_str("e.g. this"), corpus(&[&["e", "g"], &["this"]]));
        assert_eq!(tokenize_str("a.b c"), corpus(&[&["a", "b", "c"]]));
    }

    #[test]
    fn invalid_utf8_reports_offset() {
        let err = tokenize(b"abc\xffdef").unwrap_err();
        assert!(matches!(err, Error::Decode { offset: 3 }));
    }

    #[test]
    fn vocabulary_threshold() {
        let c = corpus(&[&["a", "a", "b"]]);
        let v = build_vocabulary(&c, 2).unwrap();
        assert_eq!(v.words(), ["a"]);
        assert_eq!(v.count(0), 2);
        let v = build_vocabulary(&c, 1).unwrap();
        assert_eq!(v.id("a"), Some(0));
        assert_eq!(v.id("b"), Some(1));
        assert!(matches!(
            build_vocabulary(&c, 3),
            Err(Error::EmptyVocabulary { min_count: 3 })
        ));
        assert!(build_vocabulary(&c, 0).is_err());
    }

    #[test]
    fn ties_broken_lexicographically() {
        let c = corpus(&[&["z", "y", "x", "y", "z"]]);
        let v = build_vocabulary(&c, 1).unwrap();
        assert_eq!(v.words(), ["y", "z", "x"]);
    }

    #[test]
    fn encode_drops_oov() {
        let v = Vocabulary::from_entries(vec![("a".into(), 5)], 1).unwrap();
        assert_eq!(encode(&corpus(&[&["a", "b"]]), &v), vec![vec![0]]);
        assert!(encode(&corpus(&[&["b"]]), &v).is_empty());
        assert_eq!(encode(&corpus(&[&["a", "a"]]), &v), vec![vec![0, 0]]);
    }

    #[test]
    fn vocab_file_round_trip() {
        let c = corpus(&[&["b", "a", "a", "c", "c", "c"]]);
        let v = build_vocabulary(&c, 1).unwrap();
        let text = v.to_file_string();
        assert!(text.starts_with("#vocab v1 min_count=1\nc\t3\na\t2\nb\t1\n"));
        assert_eq!(Vocabulary::parse(&text).unwrap(), v);
        let err = Vocabulary::parse("#vocab v1 min_count=1\nfoo 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    fn arb_corpus() -> impl Strategy<Value = TokenizedCorpus> {
        let word = prop::sample::select(vec!["a", "b", "c", "d", "e", "f", "g"]);
        prop::collection::vec(prop::collection::vec(word, 1..12), 0..12).prop_map(|s| {
            TokenizedCorpus {
                sentences: s
                    .into_iter()
                    .map(|x| x.into_iter().map(String::from).collect())
                    .collect(),
            }
        })
    }

    proptest! {
        #[test]
        fn counts_match_recount_and_shrink_with_threshold(c in arb_corpus(), n in 1u64..5) {
            if let Ok(v) = build_vocabulary(&c, n) {
                for (id, w) in v.words().iter().enumerate() {
                    let recount = c.sentences.iter().flatten().filter(|t| *t == w).count() as u64;
                    prop_assert_eq!(v.count(id as u32), recount);
                    prop_assert!(recount >= n);
                }
                let bigger = build_vocabulary(&c, n + 1).map(|v| v.len()).unwrap_or(0);
                prop_assert!(bigger <= v.len());
            }
        }

        #[test]
        fn encode_decode_identity_in_vocab(c in arb_corpus()) {
            if let Ok(v) = build_vocabulary(&c, 1) {
                prop_assert_eq!(decode(&encode(&c, &v), &v), c);
            }
        }
    }
}
