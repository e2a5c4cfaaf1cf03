//! Word Mover's Distance document classification with k-nearest neighbours.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::corpus::{tokenize_str, Vocabulary};
use crate::embed_io::WordVectors;
use crate::error::{Error, Result};
use crate::par;
use crate::transport::{self, TransportPlan};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959964;

/// Anything that maps a word to a row id.
pub trait WordIndex {
    fn word_id(&self, word: &str) -> Option<u32>;
}

impl WordIndex for Vocabulary {
    fn word_id(&self, word: &str) -> Option<u32> {
        self.id(word)
    }
}

impl WordIndex for WordVectors {
    fn word_id(&self, word: &str) -> Option<u32> {
        self.index_of(word).map(|i| i as u32)
    }
}

/// Normalized bag of words: sorted distinct ids with positive weights summing
/// to one.
#[derive(Debug, Clone, PartialEq)]
pub struct NBowDocument {
    pub ids: Vec<u32>,
    pub weights: Vec<f64>,
    pub label: usize,
}

impl NBowDocument {
    pub fn from_counts(counts: &[(u32, u64)], label: usize) -> Result<Self> {
        let mut c: Vec<(u32, u64)> = counts.iter().copied().filter(|&(_, n)| n > 0).collect();
        c.sort_unstable();
        c.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        let total: u64 = c.iter().map(|&(_, n)| n).sum();
        if total == 0 {
            return Err(Error::Invalid(
                "document has no in-vocabulary tokens".into(),
            ));
        }
        Ok(NBowDocument {
            ids: c.iter().map(|&(i, _)| i).collect(),
            weights: c.iter().map(|&(_, n)| n as f64 / total as f64).collect(),
            label,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Count in-vocabulary tokens and normalize; OOV tokens are dropped first.
pub fn nbow<S: AsRef<str>>(
    tokens: &[S],
    index: &impl WordIndex,
    label: usize,
) -> Result<NBowDocument> {
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for t in tokens {
        if let Some(id) = index.word_id(t.as_ref()) {
            *counts.entry(id).or_default() += 1;
        }
    }
    let counts: Vec<(u32, u64)> = counts.into_iter().collect();
    NBowDocument::from_counts(&counts, label)
}

/// Embedding space for document distances; ids index rows of the vectors.
#[derive(Debug, Clone, Copy)]
pub struct WmdSpace<'a> {
    vectors: &'a WordVectors,
}

impl<'a> WmdSpace<'a> {
    pub fn new(vectors: &'a WordVectors) -> Self {
        WmdSpace { vectors }
    }

    pub fn vectors(&self) -> &'a WordVectors {
        self.vectors
    }

    /// Euclidean distance between the embeddings of two words.
    pub fn ground_cost(&self, i: u32, j: u32) -> f64 {
        if i == j {
            return 0.0;
        }
        let a = self.vectors.row(i as usize);
        let b = self.vectors.row(j as usize);
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }

    fn cost_matrix(&self, d1: &NBowDocument, d2: &NBowDocument) -> Vec<f64> {
        let mut c = Vec::with_capacity(d1.len() * d2.len());
        for &i in &d1.ids {
            for &j in &d2.ids {
                c.push(self.ground_cost(i, j));
            }
        }
        c
    }

    /// Exact WMD with an optimal plan. Plan indices are positions within
    /// `d1.ids` and `d2.ids`.
    pub fn wmd_with_plan(
        &self,
        d1: &NBowDocument,
        d2: &NBowDocument,
    ) -> Result<(f64, TransportPlan)> {
        let cost = self.cost_matrix(d1, d2);
        let plan = transport::solve(&d1.weights, &d2.weights, &cost)?;
        Ok((plan.cost, plan))
    }

    pub fn wmd(&self, d1: &NBowDocument, d2: &NBowDocument) -> Result<f64> {
        if d1.ids == d2.ids && d1.weights == d2.weights {
            return Ok(0.0);
        }
        self.wmd_with_plan(d1, d2).map(|(d, _)| d)
    }

    pub fn centroid(&self, d: &NBowDocument) -> Vec<f64> {
        let mut c = vec![0.0; self.vectors.dim()];
        for (&id, &w) in d.ids.iter().zip(&d.weights) {
            for (ck, &x) in c.iter_mut().zip(self.vectors.row(id as usize).iter()) {
                *ck += w * x;
            }
        }
        c
    }

    /// Word centroid distance, a lower bound on WMD.
    pub fn wcd(&self, d1: &NBowDocument, d2: &NBowDocument) -> f64 {
        centroid_distance(&self.centroid(d1), &self.centroid(d2))
    }

    /// Relaxed WMD: the larger of the two relaxations that drop one marginal
    /// constraint and send every word's mass to its cheapest counterpart.
    pub fn rwmd(&self, d1: &NBowDocument, d2: &NBowDocument) -> f64 {
        let cost = self.cost_matrix(d1, d2);
        let m = d2.len();
        let forward: f64 = d1
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| {
                w * cost[i * m..(i + 1) * m]
                    .iter()
                    .copied()
                    .fold(f64::INFINITY, f64::min)
            })
            .sum();
        let backward: f64 = d2
            .weights
            .iter()
            .enumerate()
            .map(|(j, w)| {
                w * (0..d1.len())
                    .map(|i| cost[i * m + j])
                    .fold(f64::INFINITY, f64::min)
            })
            .sum();
        forward.max(backward)
    }
}

fn centroid_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KnnMode {
    #[default]
    Exhaustive,
    /// Skip exact WMD when the centroid or relaxed bound already exceeds the
    /// current k-th best distance. Predictions equal exhaustive mode.
    Pruned,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnnResult {
    pub predictions: Vec<usize>,
    pub correct: usize,
    pub total: usize,
    /// Exact WMD solves performed.
    pub wmd_evaluations: usize,
}

impl KnnResult {
    pub fn accuracy(&self) -> f64 {
        self.correct as f64 / self.total as f64
    }
}

/// Majority vote; ties go to the class with the smallest summed distance,
/// then to the lowest class index.
pub fn vote(neighbours: &[(f64, usize)], labels: impl Fn(usize) -> usize) -> usize {
    let mut tally: HashMap<usize, (usize, f64)> = HashMap::new();
    for &(d, idx) in neighbours {
        let e = tally.entry(labels(idx)).or_insert((0, 0.0));
        e.0 += 1;
        e.1 += d;
    }
    let mut classes: Vec<(usize, (usize, f64))> = tally.into_iter().collect();
    classes.sort_by(|a, b| {
        b.1 .0
            .cmp(&a.1 .0)
            .then(a.1 .1.total_cmp(&b.1 .1))
            .then(a.0.cmp(&b.0))
    });
    classes[0].0
}

fn insert_best(best: &mut Vec<(f64, usize)>, k: usize, cand: (f64, usize)) {
    let before =
        |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).is_lt();
    if best.len() == k && !before(&cand, &best[k - 1]) {
        return;
    }
    let pos = best.partition_point(|x| before(x, &cand));
    best.insert(pos, cand);
    best.truncate(k);
}

fn neighbours_exhaustive(
    space: &WmdSpace,
    query: &NBowDocument,
    train: &[NBowDocument],
    skip: Option<usize>,
    k: usize,
) -> Result<(Vec<(f64, usize)>, usize)> {
    let mut all = Vec::with_capacity(train.len());
    for (idx, t) in train.iter().enumerate() {
        if Some(idx) == skip {
            continue;
        }
        all.push((space.wmd(query, t)?, idx));
    }
    let n = all.len();
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    all.truncate(k);
    Ok((all, n))
}

fn neighbours_pruned(
    space: &WmdSpace,
    query: &NBowDocument,
    train: &[NBowDocument],
    centroids: &[Vec<f64>],
    skip: Option<usize>,
    k: usize,
) -> Result<(Vec<(f64, usize)>, usize)> {
    let qc = space.centroid(query);
    let mut order: Vec<(f64, usize)> = centroids
        .iter()
        .enumerate()
        .filter(|&(idx, _)| Some(idx) != skip)
        .map(|(idx, c)| (centroid_distance(&qc, c), idx))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut best: Vec<(f64, usize)> = Vec::with_capacity(k + 1);
    let mut evaluations = 0;
    for (bound, idx) in order {
        if best.len() == k {
            let kth = best[k - 1].0;
            // Slack absorbs rounding in the bounds.
            let limit = kth + 1e-9 * (1.0 + kth);
            if bound > limit {
                break;
            }
            if space.rwmd(query, &train[idx]) > limit {
                continue;
            }
        }
        evaluations += 1;
        insert_best(&mut best, k, (space.wmd(query, &train[idx])?, idx));
    }
    Ok((best, evaluations))
}

fn classify(
    space: &WmdSpace,
    queries: &[NBowDocument],
    train: &[NBowDocument],
    k: usize,
    mode: KnnMode,
    leave_one_out: bool,
) -> Result<KnnResult> {
    if k == 0 {
        return Err(Error::Domain("K must be at least 1".into()));
    }
    if train.is_empty() || (leave_one_out && train.len() < 2) {
        return Err(Error::Invalid("not enough training documents".into()));
    }
    let centroids: Vec<Vec<f64>> = match mode {
        KnnMode::Pruned => par::map(train, |_, d| space.centroid(d)),
        KnnMode::Exhaustive => Vec::new(),
    };
    let per_query = par::map(queries, |qi, q| {
        let skip = leave_one_out.then_some(qi);
        let (nb, evals) = match mode {
            KnnMode::Exhaustive => neighbours_exhaustive(space, q, train, skip, k)?,
            KnnMode::Pruned => neighbours_pruned(space, q, train, &centroids, skip, k)?,
        };
        Ok::<_, Error>((vote(&nb, |i| train[i].label), evals))
    });
    let mut predictions = Vec::with_capacity(queries.len());
    let mut wmd_evaluations = 0;
    for r in per_query {
        let (p, e) = r?;
        predictions.push(p);
        wmd_evaluations += e;
    }
    let correct = predictions
        .iter()
        .zip(queries)
        .filter(|(p, q)| **p == q.label)
        .count();
    Ok(KnnResult {
        predictions,
        correct,
        total: queries.len(),
        wmd_evaluations,
    })
}

/// Classify held-out documents by their `k` nearest training documents.
pub fn knn_classify(
    space: &WmdSpace,
    test: &[NBowDocument],
    train: &[NBowDocument],
    k: usize,
    mode: KnnMode,
) -> Result<KnnResult> {
    classify(space, test, train, k, mode, false)
}

/// Classify every document against all the others.
pub fn knn_leave_one_out(
    space: &WmdSpace,
    docs: &[NBowDocument],
    k: usize,
    mode: KnnMode,
) -> Result<KnnResult> {
    classify(space, docs, docs, k, mode, true)
}

/// Accuracy with a normal-approximation 95% half-width.
pub fn accuracy_ci(correct: usize, total: usize) -> Result<(f64, f64)> {
    if total == 0 || correct > total {
        return Err(Error::Domain(format!("bad counts {correct}/{total}")));
    }
    let p = correct as f64 / total as f64;
    Ok((p, Z_95 * (p * (1.0 - p) / total as f64).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Test,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawDocument {
    /// `<class_name>/<file name>`
    pub doc_id: String,
    pub label: usize,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledCorpus {
    pub classes: Vec<String>,
    pub documents: Vec<RawDocument>,
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|err| Error::io(dir, err)))
        .collect::<Result<_>>()?;
    v.sort();
    Ok(v)
}

pub fn parse_split_manifest(text: &str) -> Result<HashMap<String, Split>> {
    const WHAT: &str = "split manifest";
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, split) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(WHAT, i + 1, "expected <class>/<doc>\\t<train|test>"))?;
        let split = match split.trim() {
            "train" => Split::Train,
            "test" => Split::Test,
            s => return Err(Error::parse(WHAT, i + 1, format!("bad split {s:?}"))),
        };
        out.insert(id.trim().to_owned(), split);
    }
    Ok(out)
}

/// Load `<root>/<class_name>/<doc_id>` text files. Labels index the sorted
/// class names. With a manifest, only documents listed under `split` are
/// kept; without one every document belongs to every split.
pub fn load_labeled_corpus(
    root: &Path,
    manifest: Option<&HashMap<String, Split>>,
    split: Split,
) -> Result<LabeledCorpus> {
    let mut classes = Vec::new();
    let mut paths = Vec::new();
    for dir in sorted_entries(root)? {
        if !dir.is_dir() {
            continue;
        }
        let class = dir
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        let label = classes.len();
        classes.push(class.clone());
        for file in sorted_entries(&dir)? {
            if !file.is_file() {
                continue;
            }
            let doc_id = format!(
                "{class}/{}",
                file.file_name().unwrap_or_default().to_string_lossy()
            );
            let keep = match (manifest, split) {
                (_, Split::All) | (None, _) => true,
                (Some(m), s) => m.get(&doc_id) == Some(&s),
            };
            if keep {
                paths.push((doc_id, label, file));
            }
        }
    }
    let documents = par::map(&paths, |_, (doc_id, label, file)| {
        let bytes = std::fs::read(file).map_err(|e| Error::io(file, e))?;
        let text = String::from_utf8_lossy(&bytes);
        Ok::<_, Error>(RawDocument {
            doc_id: doc_id.clone(),
            label: *label,
            tokens: tokenize_str(&text)
                .sentences
                .into_iter()
                .flatten()
                .collect(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(LabeledCorpus { classes, documents })
}

/// nBOW documents for the usable raw documents plus the ids of those
/// excluded for having no in-vocabulary token.
pub fn to_nbow(
    docs: &[RawDocument],
    index: &impl WordIndex,
) -> (Vec<NBowDocument>, Vec<usize>, Vec<String>) {
    let mut kept = Vec::new();
    let mut kept_idx = Vec::new();
    let mut excluded = Vec::new();
    for (i, d) in docs.iter().enumerate() {
        match nbow(&d.tokens, index, d.label) {
            Ok(b) => {
                kept.push(b);
                kept_idx.push(i);
            }
            Err(_) => excluded.push(d.doc_id.clone()),
        }
    }
    (kept, kept_idx, excluded)
}

/// `doc_id,true_label,predicted_label` rows.
pub fn predictions_csv(
    doc_ids: &[&str],
    truth: &[usize],
    predicted: &[usize],
    classes: &[String],
) -> String {
    let mut out = String::from("doc_id,true_label,predicted_label\n");
    for ((id, t), p) in doc_ids.iter().zip(truth).zip(predicted) {
        let _ = writeln!(out, "{id},{},{}", classes[*t], classes[*p]);
    }
    out
}

pub fn summary_csv(correct: usize, total: usize) -> Result<String> {
    let (acc, hw) = accuracy_ci(correct, total)?;
    Ok(format!("accuracy,half_width,n\n{acc},{hw},{total}\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    fn space_vectors(rows: &[[f64; 2]]) -> WordVectors {
        WordVectors::new(
            (0..rows.len()).map(|i| format!("w{i}")).collect(),
            Array2::from_shape_vec((rows.len(), 2), rows.iter().flatten().copied().collect())
                .unwrap(),
        )
        .unwrap()
    }

    fn doc(pairs: &[(u32, u64)], label: usize) -> NBowDocument {
        NBowDocument::from_counts(pairs, label).unwrap()
    }

    #[test]
    fn nbow_weights() {
        let v = Vocabulary::from_entries(vec![("a".into(), 3), ("b".into(), 1)], 1).unwrap();
        let d = nbow(&["a", "a", "b"], &v, 0).unwrap();
        assert_eq!(d.ids, vec![0, 1]);
        assert!((d.weights[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((d.weights[1] - 1.0 / 3.0).abs() < 1e-15);
        let d = nbow(&["a", "z"], &v, 0).unwrap();
        assert_eq!(d.weights, vec![1.0]);
        assert!(nbow(&["z", "q"], &v, 0).is_err());
        let d = nbow(&["a", "b", "b", "a", "b", "a", "a"], &v, 0).unwrap();
        assert!((d.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ground_cost_cases() {
        let wv = space_vectors(&[[0.0, 0.0], [3.0, 4.0]]);
        let s = WmdSpace::new(&wv);
        assert_eq!(s.ground_cost(0, 0), 0.0);
        assert_eq!(s.ground_cost(0, 1), 5.0);
        assert_eq!(s.ground_cost(1, 0), 5.0);
    }

    #[test]
    fn wmd_simple_cases() {
        let wv = space_vectors(&[[0.0, 0.0], [3.0, 4.0], [1.0, 1.0]]);
        let s = WmdSpace::new(&wv);
        let d = doc(&[(0, 1), (1, 2)], 0);
        assert_eq!(s.wmd(&d, &d).unwrap(), 0.0);
        let (dist, plan) = s.wmd_with_plan(&d, &d).unwrap();
        assert!(dist.abs() < 1e-15);
        assert!(plan.flows.iter().all(|&(i, j, _)| i == j));
        let a = doc(&[(0, 1)], 0);
        let b = doc(&[(1, 1)], 0);
        assert!((s.wmd(&a, &b).unwrap() - 5.0).abs() < 1e-12);
        assert!((s.wcd(&a, &b) - 5.0).abs() < 1e-12);
        assert!((s.rwmd(&a, &b) - 5.0).abs() < 1e-12);
        let c = doc(&[(0, 1), (1, 1)], 0);
        assert!(s.wcd(&a, &c) <= s.rwmd(&a, &c) + 1e-12);
        assert!(s.rwmd(&a, &c) <= s.wmd(&a, &c).unwrap() + 1e-12);
    }

    #[test]
    fn lower_bounds_are_not_ordered() {
        // Same support, different weights: every word has a free counterpart,
        // so the relaxed bound is 0 while the centroids sit 4 apart.
        let wv = space_vectors(&[[0.0, 0.0], [10.0, 0.0]]);
        let s = WmdSpace::new(&wv);
        let a = doc(&[(0, 5), (1, 5)], 0);
        let b = doc(&[(0, 1), (1, 9)], 0);
        let wmd = s.wmd(&a, &b).unwrap();
        assert!((wmd - 4.0).abs() < 1e-12);
        assert_eq!(s.rwmd(&a, &b), 0.0);
        assert!((s.wcd(&a, &b) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn vote_tie_breaks() {
        let labels = [0, 1, 1, 0, 2];
        // Two votes each for classes 0 and 1; class 1 is closer in total.
        let nb = [(0.1, 0), (0.2, 1), (0.3, 2), (0.5, 3)];
        assert_eq!(vote(&nb, |i| labels[i]), 1);
        // Equal totals fall back to the lower class index.
        let nb = [(0.1, 0), (0.1, 1)];
        assert_eq!(vote(&nb, |i| labels[i]), 0);
        let nb = [(0.9, 4), (0.1, 1), (0.1, 2)];
        assert_eq!(vote(&nb, |i| labels[i]), 1);
    }

    #[test]
    fn nearest_identical_document_wins_with_k1() {
        let wv = space_vectors(&[[0.0, 0.0], [3.0, 4.0], [1.0, 1.0], [-2.0, 0.5]]);
        let s = WmdSpace::new(&wv);
        let train = vec![
            doc(&[(0, 1), (1, 1)], 0),
            doc(&[(2, 1)], 1),
            doc(&[(3, 2), (1, 1)], 2),
        ];
        let test = vec![doc(&[(3, 2), (1, 1)], 0)];
        for mode in [KnnMode::Exhaustive, KnnMode::Pruned] {
            let r = knn_classify(&s, &test, &train, 1, mode).unwrap();
            assert_eq!(r.predictions, vec![2]);
        }
        assert!(knn_classify(&s, &test, &train, 0, KnnMode::Exhaustive).is_err());
        assert!(knn_classify(&s, &test, &[], 1, KnnMode::Exhaustive).is_err());
    }

    #[test]
    fn leave_one_out_skips_self() {
        let wv = space_vectors(&[[0.0, 0.0], [0.1, 0.0], [5.0, 5.0], [5.1, 5.0]]);
        let s = WmdSpace::new(&wv);
        let docs = vec![
            doc(&[(0, 1)], 0),
            doc(&[(1, 1)], 0),
            doc(&[(2, 1)], 1),
            doc(&[(3, 1)], 1),
        ];
        let r = knn_leave_one_out(&s, &docs, 1, KnnMode::Pruned).unwrap();
        assert_eq!(r.predictions, vec![0, 0, 1, 1]);
        assert_eq!(r.correct, 4);
    }

    #[test]
    fn confidence_intervals() {
        let n = 11314;
        let (p, hw) = accuracy_ci((0.607 * n as f64).round() as usize, n).unwrap();
        assert!((p - 0.607).abs() < 1e-4);
        assert!((hw - 0.0090).abs() < 1e-4);
        let (_, hw) = accuracy_ci((0.783 * n as f64).round() as usize, n).unwrap();
        assert!((hw - 0.0076).abs() < 1e-4);
        assert_eq!(accuracy_ci(0, 10).unwrap(), (0.0, 0.0));
        assert_eq!(accuracy_ci(10, 10).unwrap(), (1.0, 0.0));
        assert!(accuracy_ci(0, 0).is_err());
    }

    #[test]
    fn manifest_parsing() {
        let m = parse_split_manifest("alt.atheism/1\ttrain\nsci.space/7\ttest\n").unwrap();
        assert_eq!(m["alt.atheism/1"], Split::Train);
        assert_eq!(m["sci.space/7"], Split::Test);
        assert!(matches!(
            parse_split_manifest("a/1\tdev\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn loads_directory_layout() {
        let dir = tempfile::tempdir().unwrap();
        for (class, name, text) in [
            ("b.class", "2", "Space is big. Stars!"),
            ("a.class", "1", "God exists?"),
            ("a.class", "3", "no"),
        ] {
            std::fs::create_dir_all(dir.path().join(class)).unwrap();
            std::fs::write(dir.path().join(class).join(name), text).unwrap();
        }
        std::fs::write(dir.path().join("README"), "ignored").unwrap();
        let c = load_labeled_corpus(dir.path(), None, Split::Train).unwrap();
        assert_eq!(c.classes, vec!["a.class", "b.class"]);
        assert_eq!(c.documents.len(), 3);
        assert_eq!(c.documents[2].doc_id, "b.class/2");
        assert_eq!(c.documents[2].tokens, vec!["space", "is", "big", "stars"]);
        let m = parse_split_manifest("a.class/1\ttrain\nb.class/2\ttest\n").unwrap();
        let c = load_labeled_corpus(dir.path(), Some(&m), Split::Test).unwrap();
        assert_eq!(c.documents.len(), 1);
        assert_eq!(c.documents[0].label, 1);
    }
}
