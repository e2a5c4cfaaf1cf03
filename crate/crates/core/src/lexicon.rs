//! Synonym knowledge base loaded from a WordNet-derived TSV export.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::corpus::Vocabulary;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl FromStr for Pos {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "noun" => Ok(Pos::Noun),
            "verb" => Ok(Pos::Verb),
            "adjective" => Ok(Pos::Adjective),
            "adverb" => Ok(Pos::Adverb),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Adjective => "adjective",
            Pos::Adverb => "adverb",
        })
    }
}

/// Counts of records discarded while loading.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub records: usize,
    pub self_synonyms: usize,
    pub multi_token: usize,
    pub duplicates: usize,
}

impl LoadReport {
    pub fn dropped(&self) -> usize {
        self.self_synonyms + self.multi_token + self.duplicates
    }
}

#[derive(Debug, Clone, Default)]
pub struct SynonymLexicon {
    // A word whose every record was dropped keeps an empty entry.
    entries: HashMap<String, Vec<(Pos, String)>>,
}

fn single_token(w: &str) -> bool {
    !w.is_empty() && !w.contains(|c: char| c == '_' || c.is_whitespace())
}

impl SynonymLexicon {
    pub fn parse(text: &str) -> Result<(Self, LoadReport)> {
        const WHAT: &str = "lexicon file";
        let mut lex = SynonymLexicon::default();
        let mut report = LoadReport::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::parse(
                    WHAT,
                    i + 1,
                    "expected <word>\\t<pos>\\t<synonym>",
                ));
            }
            let pos: Pos = fields[1]
                .trim()
                .parse()
                .map_err(|_| Error::parse(WHAT, i + 1, format!("unknown pos {:?}", fields[1])))?;
            let word = fields[0].trim().to_lowercase();
            let syn = fields[2].trim().to_lowercase();
            if word.is_empty() || syn.is_empty() {
                return Err(Error::parse(WHAT, i + 1, "empty word field"));
            }
            report.records += 1;
            if !single_token(&word) || !single_token(&syn) {
                report.multi_token += 1;
                if single_token(&word) {
                    lex.entries.entry(word).or_default();
                }
                continue;
            }
            let entry = lex.entries.entry(word.clone()).or_default();
            if syn == word {
                report.self_synonyms += 1;
                continue;
            }
            if entry.iter().any(|(p, s)| *p == pos && *s == syn) {
                report.duplicates += 1;
                continue;
            }
            entry.push((pos, syn));
        }
        Ok((lex, report))
    }

    pub fn load(path: &Path) -> Result<(Self, LoadReport)> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn to_file_string(&self) -> String {
        let mut words: Vec<&String> = self.entries.keys().collect();
        words.sort();
        let mut out = String::from("#synlex v1\n");
        for w in words {
            for (pos, syn) in &self.entries[w] {
                out.push_str(&format!("{w}\t{pos}\t{syn}\n"));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn records(&self, word: &str) -> &[(Pos, String)] {
        self.entries.get(word).map_or(&[], Vec::as_slice)
    }

    /// Distinct synonyms of `word` across all parts of speech, in file order.
    pub fn synonyms(&self, word: &str) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for (_, s) in self.records(word) {
            if !out.contains(&s.as_str()) {
                out.push(s);
            }
        }
        out
    }

    /// A word is an augmentation candidate when it is listed as a noun, verb,
    /// adjective or adverb with at least one usable synonym.
    pub fn is_candidate(&self, word: &str) -> bool {
        !self.records(word).is_empty()
    }

    /// Draw one in-vocabulary synonym of `word`, weighted by corpus count.
    pub fn sample_synonym<R: Rng + ?Sized>(
        &self,
        word: &str,
        vocab: &Vocabulary,
        rng: &mut R,
    ) -> Option<u32> {
        SynonymSampler::new(
            self.synonyms(word).into_iter().filter_map(|s| vocab.id(s)),
            vocab,
        )
        .map(|s| s.sample(rng))
    }
}

/// Count-proportional distribution over a fixed set of synonym ids.
#[derive(Debug, Clone)]
pub struct SynonymSampler {
    ids: Vec<u32>,
    dist: Option<WeightedIndex<u64>>,
}

impl SynonymSampler {
    /// `None` when no id is supplied.
    pub fn new(ids: impl IntoIterator<Item = u32>, vocab: &Vocabulary) -> Option<Self> {
        let ids: Vec<u32> = ids.into_iter().collect();
        match ids.len() {
            0 => None,
            1 => Some(SynonymSampler { ids, dist: None }),
            _ => {
                let dist = WeightedIndex::new(ids.iter().map(|&i| vocab.count(i))).ok()?;
                Some(SynonymSampler {
                    ids,
                    dist: Some(dist),
                })
            }
        }
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match &self.dist {
            None => self.ids[0],
            Some(d) => self.ids[d.sample(rng)],
        }
    }
}

/// Per-vocabulary-id synonym samplers, precomputed for augmentation.
#[derive(Debug, Clone)]
pub struct SynonymTable {
    samplers: Vec<Option<SynonymSampler>>,
}

impl SynonymTable {
    pub fn new(lexicon: &SynonymLexicon, vocab: &Vocabulary) -> Self {
        let samplers = vocab
            .words()
            .iter()
            .map(|w| {
                if !lexicon.is_candidate(w) {
                    return None;
                }
                let ids = lexicon.synonyms(w).into_iter().filter_map(|s| vocab.id(s));
                SynonymSampler::new(ids, vocab)
            })
            .collect();
        SynonymTable { samplers }
    }

    pub fn get(&self, id: u32) -> Option<&SynonymSampler> {
        self.samplers.get(id as usize).and_then(Option::as_ref)
    }
}
