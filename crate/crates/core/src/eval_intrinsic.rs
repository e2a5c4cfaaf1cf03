//! Intrinsic evaluation: correlation between embedding distances and human
//! similarity scores, and distance statistics over synonym, contextual and
//! random word-pair sets.

use std::collections::HashSet;
use std::path::Path;

use ndarray::ArrayView1;
use rand::seq::index;
use rand::Rng;

use crate::corpus::Vocabulary;
use crate::embed_io::WordVectors;
use crate::error::{Error, Result};
use crate::pairgen::WordPair;
use crate::seed;

pub fn cosine_distance(u: ArrayView1<f64>, v: ArrayView1<f64>) -> Result<f64> {
    let nu = u.dot(&u).sqrt();
    let nv = v.dot(&v).sqrt();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::Domain("cosine distance of a zero vector".into()));
    }
    let cos = (u.dot(&v) / (nu * nv)).clamp(-1.0, 1.0);
    Ok(1.0 - cos)
}

pub fn euclidean_distance(u: ArrayView1<f64>, v: ArrayView1<f64>) -> f64 {
    u.iter()
        .zip(v.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Ranks starting at 1; tied values share the average of their ranks.
pub fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Domain(
            "correlation undefined for constant input".into(),
        ));
    }
    // sqrt of the product is exact when sxx == syy, so ρ(x, x) is exactly 1.
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's rank correlation: Pearson correlation of average ranks.
pub fn spearman_rho(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Domain(format!(
            "spearman needs two equal-length lists of at least 2 values (got {} and {})",
            xs.len(),
            ys.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::Domain(
            "non-finite value in correlation input".into(),
        ));
    }
    pearson(&average_ranks(xs), &average_ranks(ys))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityDataset {
    pub name: String,
    pub pairs: Vec<(String, String, f64)>,
}

impl SimilarityDataset {
    /// Build from raw pairs, lowercasing words and keeping the first of any
    /// duplicated unordered pair.
    pub fn new(name: impl Into<String>, raw: Vec<(String, String, f64)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut pairs = Vec::with_capacity(raw.len());
        for (a, b, s) in raw {
            if !s.is_finite() {
                return Err(Error::Invalid(format!("non-finite score for ({a}, {b})")));
            }
            let (a, b) = (a.to_lowercase(), b.to_lowercase());
            let key = if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            if seen.insert(key) {
                pairs.push((a, b, s));
            }
        }
        Ok(SimilarityDataset {
            name: name.into(),
            pairs,
        })
    }

    /// SimLex-999 TSV: header row with `word1`, `word2` and `SimLex999` columns.
    pub fn parse_simlex(name: &str, text: &str) -> Result<Self> {
        const WHAT: &str = "SimLex999 file";
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(WHAT, 1, "missing header"))?;
        let cols: Vec<&str> = header.split('\t').map(str::trim).collect();
        let col = |name: &str| {
            cols.iter()
                .position(|c| *c == name)
                .ok_or_else(|| Error::parse(WHAT, 1, format!("missing column {name}")))
        };
        let (c1, c2, cs) = (col("word1")?, col("word2")?, col("SimLex999")?);
        let mut raw = Vec::new();
        for (i, line) in lines {
            let f: Vec<&str> = line.split('\t').collect();
            let get = |c: usize| {
                f.get(c)
                    .map(|s| s.trim())
                    .ok_or_else(|| Error::parse(WHAT, i + 1, "missing column"))
            };
            let score = get(cs)?;
            let score: f64 = score
                .parse()
                .map_err(|_| Error::parse(WHAT, i + 1, format!("bad score {score:?}")))?;
            raw.push((get(c1)?.to_owned(), get(c2)?.to_owned(), score));
        }
        Self::new(name, raw)
    }

    /// WordSim-353 style TSV `word1\tword2\tscore`, with an optional header.
    pub fn parse_wordsim(name: &str, text: &str) -> Result<Self> {
        const WHAT: &str = "WordSim353 file";
        let mut raw = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').map(str::trim).collect();
            if f.len() < 3 {
                return Err(Error::parse(WHAT, i + 1, "expected word1\\tword2\\tscore"));
            }
            match f[2].parse::<f64>() {
                Ok(s) => raw.push((f[0].to_owned(), f[1].to_owned(), s)),
                Err(_) if raw.is_empty() => continue,
                Err(_) => return Err(Error::parse(WHAT, i + 1, format!("bad score {:?}", f[2]))),
            }
        }
        Self::new(name, raw)
    }

    /// Pick the parser from the header: a `SimLex999` column means SimLex.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("dataset")
            .to_owned();
        let first = text.lines().next().unwrap_or_default();
        if first.split('\t').any(|c| c.trim() == "SimLex999") {
            Self::parse_simlex(&name, &text)
        } else {
            Self::parse_wordsim(&name, &text)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceKind {
    #[default]
    Cosine,
    Euclidean,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult {
    pub rho: f64,
    pub pairs_used: usize,
    pub pairs_total: usize,
}

/// Spearman's ρ between embedding distances and human scores over the pairs
/// whose words are both in `common_vocab` (and in the model).
pub fn similarity_correlation(
    vectors: &WordVectors,
    dataset: &SimilarityDataset,
    common_vocab: &Vocabulary,
    kind: DistanceKind,
) -> Result<CorrelationResult> {
    let mut dists = Vec::new();
    let mut scores = Vec::new();
    for (a, b, s) in &dataset.pairs {
        if !common_vocab.contains(a) || !common_vocab.contains(b) {
            continue;
        }
        let (Some(u), Some(v)) = (vectors.vector(a), vectors.vector(b)) else {
            continue;
        };
        let d = match kind {
            DistanceKind::Cosine => cosine_distance(u, v)?,
            DistanceKind::Euclidean => euclidean_distance(u, v),
        };
        dists.push(d);
        scores.push(*s);
    }
    if dists.len() < 2 {
        return Err(Error::Invalid(format!(
            "{}: only {} usable pairs",
            dataset.name,
            dists.len()
        )));
    }
    Ok(CorrelationResult {
        rho: spearman_rho(&dists, &scores)?,
        pairs_used: dists.len(),
        pairs_total: dataset.pairs.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    Synonym,
    Contextual,
    Random,
}

impl PairKind {
    pub fn name(self) -> &'static str {
        match self {
            PairKind::Synonym => "synonym",
            PairKind::Contextual => "contextual",
            PairKind::Random => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairSet {
    pub kind: PairKind,
    pub pairs: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStats {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub n: usize,
}

impl PairStats {
    pub fn standard_error(&self) -> f64 {
        self.std / (self.n as f64).sqrt()
    }
}

/// Mean and population standard deviation of cosine distances over a pair set,
/// using the rows of `vectors` addressed by vocabulary id.
pub fn pairset_stats(vectors: &WordVectors, pairset: &PairSet) -> Result<PairStats> {
    if pairset.pairs.is_empty() {
        return Err(Error::Invalid("empty pair set".into()));
    }
    let dists: Vec<f64> = pairset
        .pairs
        .iter()
        .map(|&(a, b)| cosine_distance(vectors.row(a as usize), vectors.row(b as usize)))
        .collect::<Result<_>>()?;
    let n = dists.len() as f64;
    let mean = dists.iter().sum::<f64>() / n;
    let var = dists.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n;
    Ok(PairStats {
        mean,
        std: var.sqrt(),
        n: dists.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSetSizes {
    pub synonym: usize,
    pub contextual: usize,
    pub random: usize,
}

impl Default for PairSetSizes {
    fn default() -> Self {
        PairSetSizes {
            synonym: 1000,
            contextual: 1000,
            random: 1000,
        }
    }
}

fn distinct_unordered(pairs: impl IntoIterator<Item = (u32, u32)>) -> Vec<(u32, u32)> {
    let mut seen = HashSet::new();
    pairs
        .into_iter()
        .filter(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
        .collect()
}

fn subsample<R: Rng>(
    kind: PairKind,
    mut pairs: Vec<(u32, u32)>,
    size: usize,
    rng: &mut R,
) -> Result<PairSet> {
    if size > pairs.len() {
        return Err(Error::Invalid(format!(
            "requested {size} {} pairs but only {} distinct pairs exist",
            kind.name(),
            pairs.len()
        )));
    }
    let mut keep = index::sample(rng, pairs.len(), size).into_vec();
    keep.sort_unstable();
    pairs = keep.into_iter().map(|i| pairs[i]).collect();
    Ok(PairSet { kind, pairs })
}

/// Synonym pairs from augmentation substitutions, contextual pairs from
/// natural training pairs, random pairs uniformly from the vocabulary. Pairs
/// are distinct as unordered pairs and never pair a word with itself.
pub fn build_pairsets(
    substitutions: &[(u32, u32)],
    natural: &[WordPair],
    vocab_size: usize,
    sizes: PairSetSizes,
    seed: u64,
) -> Result<[PairSet; 3]> {
    if substitutions.is_empty() || natural.is_empty() {
        return Err(Error::Invalid(
            "pair sets need substitutions and natural pairs".into(),
        ));
    }
    let synonyms = distinct_unordered(substitutions.iter().copied());
    let contextual = distinct_unordered(natural.iter().map(|p| (p.focus, p.context)));
    let syn = subsample(
        PairKind::Synonym,
        synonyms,
        sizes.synonym,
        &mut seed::rng(seed, "pairset-synonym", 0),
    )?;
    let ctx = subsample(
        PairKind::Contextual,
        contextual,
        sizes.contextual,
        &mut seed::rng(seed, "pairset-contextual", 0),
    )?;

    let n = vocab_size as u64;
    let available = n * n.saturating_sub(1) / 2;
    if sizes.random as u64 > available {
        return Err(Error::Invalid(format!(
            "requested {} random pairs but only {available} distinct pairs exist",
            sizes.random
        )));
    }
    let mut rng = seed::rng(seed, "pairset-random", 0);
    let mut seen = HashSet::new();
    let mut random = Vec::with_capacity(sizes.random);
    while random.len() < sizes.random {
        let a = rng.random_range(0..vocab_size as u32);
        let b = rng.random_range(0..vocab_size as u32);
        if a != b && seen.insert((a.min(b), a.max(b))) {
            random.push((a, b));
        }
    }
    Ok([
        syn,
        ctx,
        PairSet {
            kind: PairKind::Random,
            pairs: random,
        },
    ])
}
