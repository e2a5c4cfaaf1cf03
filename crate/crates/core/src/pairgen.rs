//! Skip-gram (focus, context) pair construction with position-dependent
//! sampling: every candidate pair at absolute offset `c` is kept independently
//! with probability `(C - c + 1) / C`.

use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;

use crate::corpus::EncodedCorpus;
use crate::error::{Error, Result};
use crate::{par, seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Natural,
    Augmented,
}

impl Origin {
    fn flag(self) -> char {
        match self {
            Origin::Natural => 'N',
            Origin::Augmented => 'A',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WordPair {
    pub focus: u32,
    pub context: u32,
    /// Absolute offset from the focus word, in `1..=C`.
    pub position: u32,
    pub origin: Origin,
}

impl WordPair {
    pub fn natural(focus: u32, context: u32, position: u32) -> Self {
        WordPair {
            focus,
            context,
            position,
            origin: Origin::Natural,
        }
    }
}

pub fn keep_probability(c: u32, max_context: u32) -> Result<f64> {
    if max_context == 0 || c == 0 || c > max_context {
        return Err(Error::Domain(format!(
            "context position {c} outside 1..={max_context}"
        )));
    }
    Ok((max_context - c + 1) as f64 / max_context as f64)
}

/// All candidate pairs of one sentence before sampling, in emission order:
/// for each focus token, offsets `1..=C`, left neighbour before right.
pub fn candidate_pairs(sentence: &[u32], max_context: u32) -> Vec<WordPair> {
    let mut out = Vec::new();
    let n = sentence.len();
    for (i, &focus) in sentence.iter().enumerate() {
        for c in 1..=max_context as usize {
            if c <= i {
                out.push(WordPair::natural(focus, sentence[i - c], c as u32));
            }
            if i + c < n {
                out.push(WordPair::natural(focus, sentence[i + c], c as u32));
            }
        }
    }
    out
}

fn sample_sentence<R: Rng>(
    sentence: &[u32],
    max_context: u32,
    probs: &[f64],
    rng: &mut R,
) -> Vec<WordPair> {
    let mut out = Vec::new();
    for pair in candidate_pairs(sentence, max_context) {
        let p = probs[pair.position as usize - 1];
        // p == 1 consumes no randomness, so adjacent pairs never shift the stream.
        if p >= 1.0 || rng.random::<f64>() < p {
            out.push(pair);
        }
    }
    out
}

/// Sample natural pairs from an encoded corpus. Sentence `i` draws from the
/// sub-stream `("pairgen", i)` of `seed`, so the output does not depend on
/// the number of threads.
pub fn generate_pairs(
    corpus: &EncodedCorpus,
    max_context: u32,
    seed: u64,
) -> Result<Vec<WordPair>> {
    if max_context == 0 {
        return Err(Error::Domain("max context size must be at least 1".into()));
    }
    let probs: Vec<f64> = (1..=max_context)
        .map(|c| keep_probability(c, max_context))
        .collect::<Result<_>>()?;
    let per_sentence = par::map(corpus, |i, s| {
        let mut rng = seed::rng(seed, "pairgen", i as u64);
        sample_sentence(s, max_context, &probs, &mut rng)
    });
    Ok(per_sentence.into_iter().flatten().collect())
}

/// Header metadata of a pair file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PairFileHeader {
    pub max_context: u32,
    pub seed: u64,
    pub ratio: Option<f64>,
    pub augment_seed: Option<u64>,
}

impl PairFileHeader {
    fn render(&self) -> String {
        let mut h = format!("#pairs v1 C={} seed={}", self.max_context, self.seed);
        if let Some(r) = self.ratio {
            let _ = write!(h, " ratio={r}");
        }
        if let Some(s) = self.augment_seed {
            let _ = write!(h, " augment_seed={s}");
        }
        h
    }
}

pub fn pairs_to_string(header: &PairFileHeader, pairs: &[WordPair]) -> String {
    let mut out = String::with_capacity(16 * pairs.len() + 64);
    out.push_str(&header.render());
    out.push('\n');
    for p in pairs {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            p.focus,
            p.context,
            p.position,
            p.origin.flag()
        );
    }
    out
}

pub fn parse_pairs(text: &str) -> Result<(PairFileHeader, Vec<WordPair>)> {
    const WHAT: &str = "pair file";
    let mut lines = text.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| Error::parse(WHAT, 1, "missing header"))?;
    let rest = first
        .strip_prefix("#pairs v1")
        .ok_or_else(|| Error::parse(WHAT, 1, format!("bad header {first:?}")))?;
    let mut header = PairFileHeader::default();
    for kv in rest.split_whitespace() {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::parse(WHAT, 1, format!("bad header field {kv:?}")))?;
        let bad = || Error::parse(WHAT, 1, format!("bad value for {k}: {v:?}"));
        match k {
            "C" => header.max_context = v.parse().map_err(|_| bad())?,
            "seed" => header.seed = v.parse().map_err(|_| bad())?,
            "ratio" => header.ratio = Some(v.parse().map_err(|_| bad())?),
            "augment_seed" => header.augment_seed = Some(v.parse().map_err(|_| bad())?),
            _ => {}
        }
    }
    let mut pairs = Vec::new();
    for (i, line) in lines {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(Error::parse(WHAT, lineno, "expected 4 fields"));
        }
        let num = |s: &str| -> Result<u32> {
            s.parse()
                .map_err(|_| Error::parse(WHAT, lineno, format!("bad integer {s:?}")))
        };
        let origin = match f[3] {
            "N" => Origin::Natural,
            "A" => Origin::Augmented,
            o => return Err(Error::parse(WHAT, lineno, format!("bad origin {o:?}"))),
        };
        let position = num(f[2])?;
        if position == 0 || (header.max_context > 0 && position > header.max_context) {
            return Err(Error::parse(
                WHAT,
                lineno,
                format!("position {position} out of range"),
            ));
        }
        pairs.push(WordPair {
            focus: num(f[0])?,
            context: num(f[1])?,
            position,
            origin,
        });
    }
    Ok((header, pairs))
}

pub fn write_pairs(path: &Path, header: &PairFileHeader, pairs: &[WordPair]) -> Result<()> {
    std::fs::write(path, pairs_to_string(header, pairs)).map_err(|e| Error::io(path, e))
}

pub fn read_pairs(path: &Path) -> Result<(PairFileHeader, Vec<WordPair>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_pairs(&text)
}
