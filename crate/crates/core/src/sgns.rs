//! Skip-gram with negative sampling, trained by mini-batch SGD.
//!
//! Per pair with focus input vector `v`, context output vector `u_c` and
//! negatives `u_n`:
//!
//! ```text
//! loss = -log σ(u_c·v) - Σ_n log σ(-u_n·v)
//! ```
//!
//! Gradients are summed over a batch and applied once with the configured
//! step size.

use std::collections::HashMap;

use ndarray::{Array2, ArrayView1};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::corpus::Vocabulary;
use crate::embed_io::WordVectors;
use crate::error::{Error, Result};
use crate::pairgen::WordPair;
use crate::{par, seed};

/// Input and output embedding matrices, one row per vocabulary id.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    pub input: Array2<f64>,
    pub output: Array2<f64>,
}

impl EmbeddingModel {
    pub fn vocab_size(&self) -> usize {
        self.input.nrows()
    }

    pub fn dim(&self) -> usize {
        self.input.ncols()
    }

    pub fn is_finite(&self) -> bool {
        self.input
            .iter()
            .chain(self.output.iter())
            .all(|x| x.is_finite())
    }

    pub fn input_vectors(&self, vocab: &Vocabulary) -> WordVectors {
        WordVectors::new(vocab.words().to_vec(), self.input.clone())
            .expect("model rows match vocabulary")
    }

    pub fn output_vectors(&self, vocab: &Vocabulary) -> WordVectors {
        WordVectors::new(vocab.words().to_vec(), self.output.clone())
            .expect("model rows match vocabulary")
    }
}

fn uniform_matrix<R: Rng>(rows: usize, dim: usize, rng: &mut R) -> Array2<f64> {
    let bound = 0.5 / dim as f64;
    Array2::from_shape_simple_fn((rows, dim), || rng.random_range(-bound..=bound))
}

/// Input rows uniform on `[-0.5/d, 0.5/d]`, output rows zero.
pub fn init_random(vocab_size: usize, dim: usize, seed: u64) -> Result<EmbeddingModel> {
    if vocab_size == 0 || dim == 0 {
        return Err(Error::Domain(
            "vocabulary size and dimension must be positive".into(),
        ));
    }
    let mut rng = seed::rng(seed, "init-input", 0);
    Ok(EmbeddingModel {
        input: uniform_matrix(vocab_size, dim, &mut rng),
        output: Array2::zeros((vocab_size, dim)),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PretrainedInit {
    pub model: EmbeddingModel,
    /// Fraction of the vocabulary found in the pretrained vectors.
    pub coverage: f64,
}

/// Copy pretrained input rows where available; everything else, including the
/// whole output matrix, gets the random uniform scheme.
pub fn init_pretrained(
    vocab: &Vocabulary,
    pretrained: &WordVectors,
    dim: usize,
    seed: u64,
) -> Result<PretrainedInit> {
    if pretrained.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: pretrained.dim(),
        });
    }
    let mut model = init_random(vocab.len(), dim, seed)?;
    model.output = uniform_matrix(vocab.len(), dim, &mut seed::rng(seed, "init-output", 0));
    let mut found = 0;
    for (id, w) in vocab.words().iter().enumerate() {
        if let Some(v) = pretrained.vector(w) {
            model.input.row_mut(id).assign(&v);
            found += 1;
        }
    }
    Ok(PretrainedInit {
        model,
        coverage: found as f64 / vocab.len() as f64,
    })
}

/// Unigram noise distribution `P(w) ∝ count(w)^α`.
#[derive(Debug, Clone)]
pub struct NoiseDistribution {
    probabilities: Vec<f64>,
    exponent: f64,
    sampler: WeightedIndex<f64>,
}

pub const DEFAULT_NOISE_EXPONENT: f64 = 0.75;

impl NoiseDistribution {
    pub fn from_counts(counts: &[u64], exponent: f64) -> Result<Self> {
        if counts.is_empty() || counts.contains(&0) {
            return Err(Error::Domain(
                "noise distribution needs positive counts".into(),
            ));
        }
        let weights: Vec<f64> = counts.iter().map(|&c| (c as f64).powf(exponent)).collect();
        let total: f64 = weights.iter().sum();
        let probabilities = weights.iter().map(|w| w / total).collect();
        let sampler = WeightedIndex::new(&weights).map_err(|e| Error::Domain(e.to_string()))?;
        Ok(NoiseDistribution {
            probabilities,
            exponent,
            sampler,
        })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        self.sampler.sample(rng) as u32
    }

    /// Draw `k` negatives, redrawing any that equal `context`.
    pub fn negatives<R: Rng + ?Sized>(&self, context: u32, k: usize, rng: &mut R) -> Vec<u32> {
        (0..k)
            .map(|_| loop {
                let n = self.sample(rng);
                if n != context {
                    break n;
                }
            })
            .collect()
    }
}

pub fn noise_distribution(vocab: &Vocabulary, exponent: f64) -> Result<NoiseDistribution> {
    NoiseDistribution::from_counts(vocab.counts(), exponent)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitMode {
    Random,
    Pretrained,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub dim: usize,
    pub negatives: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub seed: u64,
    pub init_mode: InitMode,
    pub noise_exponent: f64,
    /// Batches evaluated concurrently against one parameter snapshot. `1` is
    /// plain sequential SGD.
    pub workers: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            dim: 300,
            negatives: 5,
            epochs: 10,
            learning_rate: 0.01,
            batch_size: 10,
            seed: 0,
            init_mode: InitMode::Random,
            noise_exponent: DEFAULT_NOISE_EXPONENT,
            workers: 1,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0
            || self.negatives == 0
            || self.epochs == 0
            || self.batch_size == 0
            || self.workers == 0
        {
            return Err(Error::Domain(
                "dim, negatives, epochs, batch size and workers must be positive".into(),
            ));
        }
        if !(self.learning_rate >= 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Domain(format!(
                "bad learning rate {}",
                self.learning_rate
            )));
        }
        Ok(())
    }
}

/// `log σ(x)` without overflow.
pub fn log_sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        -(-x).exp().ln_1p()
    } else {
        x - x.exp().ln_1p()
    }
}

pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn dot(a: ArrayView1<f64>, b: ArrayView1<f64>) -> f64 {
    a.dot(&b)
}

pub fn pair_loss(model: &EmbeddingModel, focus: u32, context: u32, negatives: &[u32]) -> f64 {
    let v = model.input.row(focus as usize);
    let pos = -log_sigmoid(dot(model.output.row(context as usize), v));
    negatives.iter().fold(pos, |acc, &n| {
        acc - log_sigmoid(-dot(model.output.row(n as usize), v))
    })
}

/// Sparse gradient: rows of the input and output matrices with their
/// accumulated gradient, in first-touched order.
#[derive(Debug, Clone, Default)]
pub struct SparseGradient {
    dim: usize,
    input: Vec<(u32, Vec<f64>)>,
    output: Vec<(u32, Vec<f64>)>,
    input_slot: HashMap<u32, usize>,
    output_slot: HashMap<u32, usize>,
}

fn slot<'a>(
    rows: &'a mut Vec<(u32, Vec<f64>)>,
    index: &mut HashMap<u32, usize>,
    id: u32,
    dim: usize,
) -> &'a mut Vec<f64> {
    let i = *index.entry(id).or_insert_with(|| {
        rows.push((id, vec![0.0; dim]));
        rows.len() - 1
    });
    &mut rows[i].1
}

impl SparseGradient {
    pub fn new(dim: usize) -> Self {
        SparseGradient {
            dim,
            ..Default::default()
        }
    }

    pub fn input_row(&self, id: u32) -> Option<&[f64]> {
        self.input_slot
            .get(&id)
            .map(|&i| self.input[i].1.as_slice())
    }

    pub fn output_row(&self, id: u32) -> Option<&[f64]> {
        self.output_slot
            .get(&id)
            .map(|&i| self.output[i].1.as_slice())
    }

    /// Add the gradient of `pair_loss` for one pair; returns the pair's loss.
    pub fn accumulate(
        &mut self,
        model: &EmbeddingModel,
        focus: u32,
        context: u32,
        negatives: &[u32],
    ) -> f64 {
        let dim = self.dim;
        let v = model.input.row(focus as usize);
        let mut grad_v = vec![0.0; dim];
        let mut loss = 0.0;

        let push = |id: u32, label: f64, grad_v: &mut [f64], out: &mut Self| -> f64 {
            let u = model.output.row(id as usize);
            let s = dot(u, v);
            // d/ds of -log σ(s) is σ(s) - 1; of -log σ(-s) is σ(s).
            let g = sigmoid(s) - label;
            for (gv, &uk) in grad_v.iter_mut().zip(u.iter()) {
                *gv += g * uk;
            }
            let gu = slot(&mut out.output, &mut out.output_slot, id, dim);
            for (gk, &vk) in gu.iter_mut().zip(v.iter()) {
                *gk += g * vk;
            }
            if label > 0.5 {
                -log_sigmoid(s)
            } else {
                -log_sigmoid(-s)
            }
        };

        loss += push(context, 1.0, &mut grad_v, self);
        for &n in negatives {
            loss += push(n, 0.0, &mut grad_v, self);
        }
        let gi = slot(&mut self.input, &mut self.input_slot, focus, dim);
        for (a, b) in gi.iter_mut().zip(&grad_v) {
            *a += b;
        }
        loss
    }

    /// `param -= lr * grad` for every touched row.
    pub fn apply(&self, model: &mut EmbeddingModel, lr: f64) {
        for (id, g) in &self.input {
            let mut row = model.input.row_mut(*id as usize);
            for (x, gk) in row.iter_mut().zip(g) {
                *x -= lr * gk;
            }
        }
        for (id, g) in &self.output {
            let mut row = model.output.row_mut(*id as usize);
            for (x, gk) in row.iter_mut().zip(g) {
                *x -= lr * gk;
            }
        }
    }
}

fn batch_gradient<R: Rng>(
    model: &EmbeddingModel,
    batch: &[WordPair],
    noise: &NoiseDistribution,
    k: usize,
    rng: &mut R,
) -> (SparseGradient, f64) {
    let mut grad = SparseGradient::new(model.dim());
    let mut total = 0.0;
    for p in batch {
        let negs = noise.negatives(p.context, k, rng);
        total += grad.accumulate(model, p.focus, p.context, &negs);
    }
    (grad, total / batch.len() as f64)
}

/// One SGD step over a batch; returns the batch mean loss (before the update).
pub fn train_step<R: Rng>(
    model: &mut EmbeddingModel,
    batch: &[WordPair],
    noise: &NoiseDistribution,
    config: &TrainConfig,
    rng: &mut R,
) -> Result<f64> {
    if batch.is_empty() {
        return Err(Error::Invalid("empty batch".into()));
    }
    let (grad, loss) = batch_gradient(model, batch, noise, config.negatives, rng);
    grad.apply(model, config.learning_rate);
    Ok(loss)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub model: EmbeddingModel,
    pub epoch_losses: Vec<f64>,
}

/// Train from an initial model. Each epoch reshuffles the pairs with the
/// sub-stream `("shuffle", epoch)`; batch `b` of epoch `e` draws negatives
/// from `("negatives", e << 32 | b)`.
///
/// With `workers > 1`, groups of `workers` consecutive batches compute their
/// gradients in parallel from the same parameters and are then applied in
/// batch order. This is deterministic for a fixed worker count but differs
/// from the sequential result.
pub fn train(
    dataset: &[WordPair],
    vocab: &Vocabulary,
    config: &TrainConfig,
    initial: EmbeddingModel,
) -> Result<TrainOutcome> {
    train_with(dataset, vocab, config, initial, |_, _| Ok(()))
}

/// [`train`], calling `on_epoch(epoch, model)` after every epoch (for
/// checkpoints).
pub fn train_with(
    dataset: &[WordPair],
    vocab: &Vocabulary,
    config: &TrainConfig,
    initial: EmbeddingModel,
    mut on_epoch: impl FnMut(usize, &EmbeddingModel) -> Result<()>,
) -> Result<TrainOutcome> {
    config.validate()?;
    if dataset.is_empty() {
        return Err(Error::Invalid("training dataset is empty".into()));
    }
    if vocab.len() < 2 {
        return Err(Error::Invalid(
            "negative sampling needs at least two words".into(),
        ));
    }
    if initial.vocab_size() != vocab.len() || initial.dim() != config.dim {
        return Err(Error::DimensionMismatch {
            expected: vocab.len() * config.dim,
            found: initial.vocab_size() * initial.dim(),
        });
    }
    if let Some(p) = dataset
        .iter()
        .find(|p| p.focus as usize >= vocab.len() || p.context as usize >= vocab.len())
    {
        return Err(Error::Invalid(format!(
            "pair {p:?} references an id outside the vocabulary"
        )));
    }
    let noise = noise_distribution(vocab, config.noise_exponent)?;
    let mut model = initial;
    let mut order: Vec<WordPair> = dataset.to_vec();
    let mut epoch_losses = Vec::with_capacity(config.epochs);

    for epoch in 0..config.epochs {
        order.shuffle(&mut seed::rng(config.seed, "shuffle", epoch as u64));
        let batches: Vec<&[WordPair]> = order.chunks(config.batch_size).collect();
        let mut sum = 0.0;
        for (g, group) in batches.chunks(config.workers).enumerate() {
            let first = g * config.workers;
            let stream =
                |b: usize| seed::rng(config.seed, "negatives", ((epoch as u64) << 32) | b as u64);
            let results: Vec<(SparseGradient, f64)> = if group.len() == 1 {
                vec![batch_gradient(
                    &model,
                    group[0],
                    &noise,
                    config.negatives,
                    &mut stream(first),
                )]
            } else {
                let snapshot = &model;
                par::map(group, |j, batch| {
                    batch_gradient(
                        snapshot,
                        batch,
                        &noise,
                        config.negatives,
                        &mut stream(first + j),
                    )
                })
            };
            for (j, (grad, loss)) in results.into_iter().enumerate() {
                if !loss.is_finite() {
                    return Err(Error::NonFiniteLoss {
                        epoch,
                        batch: first + j,
                    });
                }
                grad.apply(&mut model, config.learning_rate);
                sum += loss;
            }
        }
        let mean = sum / batches.len() as f64;
        log::info!("epoch {} mean loss {:.6}", epoch + 1, mean);
        epoch_losses.push(mean);
        on_epoch(epoch, &model)?;
    }
    if !model.is_finite() {
        return Err(Error::NonFiniteLoss {
            epoch: config.epochs - 1,
            batch: 0,
        });
    }
    Ok(TrainOutcome {
        model,
        epoch_losses,
    })
}

/// Training log as CSV `epoch,mean_loss`.
pub fn loss_csv(losses: &[f64]) -> String {
    let mut out = String::from("epoch,mean_loss\n");
    for (i, l) in losses.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, l));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vocab(n: usize) -> Vocabulary {
        Vocabulary::from_entries(
            (0..n).map(|i| (format!("w{i}"), (n - i) as u64)).collect(),
            1,
        )
        .unwrap()
    }

    fn random_model(n: usize, d: usize, seed: u64) -> EmbeddingModel {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        EmbeddingModel {
            input: Array2::from_shape_simple_fn((n, d), || rng.random_range(-0.5..0.5)),
            output: Array2::from_shape_simple_fn((n, d), || rng.random_range(-0.5..0.5)),
        }
    }

    #[test]
    fn random_init_bounds_and_determinism() {
        let m = init_random(50, 8, 4).unwrap();
        assert!(m.input.iter().all(|x| x.abs() <= 0.5 / 8.0));
        assert!(m.output.iter().all(|&x| x == 0.0));
        assert_eq!(m, init_random(50, 8, 4).unwrap());
        assert_ne!(m, init_random(50, 8, 5).unwrap());
        assert!(init_random(0, 8, 1).is_err());
    }

    #[test]
    fn pretrained_init_copies_and_falls_back() {
        let v = vocab(3);
        let pre = WordVectors::new(
            vec!["w1".into(), "zz".into()],
            Array2::from_shape_vec((2, 2), vec![0.25, -2.0, 9.0, 9.0]).unwrap(),
        )
        .unwrap();
        let init = init_pretrained(&v, &pre, 2, 8).unwrap();
        assert_eq!(init.model.input.row(1).to_vec(), vec![0.25, -2.0]);
        assert!(init.model.input.row(0).iter().all(|x| x.abs() <= 0.25));
        assert!(init.model.output.iter().any(|&x| x != 0.0));
        assert!(init.model.output.iter().all(|x| x.abs() <= 0.25));
        assert!((init.coverage - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            init_pretrained(&v, &pre, 3, 8),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn noise_distribution_values() {
        let n = NoiseDistribution::from_counts(&[2, 1], 0.75).unwrap();
        // Brute-force normalization.
        let a = 2f64.powf(0.75);
        assert!((n.probabilities()[0] - a / (a + 1.0)).abs() < 1e-15);
        assert!((n.probabilities()[0] - 0.6271).abs() < 1e-4);
        assert!((n.probabilities()[1] - 0.3729).abs() < 1e-4);
        let u = NoiseDistribution::from_counts(&[7, 3, 1], 0.0).unwrap();
        assert!(u
            .probabilities()
            .iter()
            .all(|p| (p - 1.0 / 3.0).abs() < 1e-15));
        let p = NoiseDistribution::from_counts(&[3, 1], 1.0).unwrap();
        assert_eq!(p.probabilities()[0], 0.75);
        let total: f64 = NoiseDistribution::from_counts(&[5, 9, 1, 400, 3], 0.75)
            .unwrap()
            .probabilities()
            .iter()
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negatives_never_equal_context() {
        let n = NoiseDistribution::from_counts(&[100, 1, 1], 0.75).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            assert!(n.negatives(0, 5, &mut rng).iter().all(|&x| x != 0));
        }
    }

    #[test]
    fn zero_model_loss() {
        let m = EmbeddingModel {
            input: Array2::zeros((4, 3)),
            output: Array2::zeros((4, 3)),
        };
        let l = pair_loss(&m, 0, 1, &[2, 3, 2, 1, 0]);
        assert!((l - 6.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn loss_vanishes_at_asymptote() {
        let mut m = EmbeddingModel {
            input: Array2::zeros((3, 1)),
            output: Array2::zeros((3, 1)),
        };
        m.input[[0, 0]] = 1.0;
        m.output[[1, 0]] = 800.0;
        m.output[[2, 0]] = -800.0;
        let l = pair_loss(&m, 0, 1, &[2, 2]);
        assert!((0.0..1e-300).contains(&l));
    }

    #[test]
    fn loss_matches_direct_formula() {
        let m = random_model(5, 4, 1);
        let (f, c, negs) = (2usize, 4usize, [0usize, 3]);
        let sig = |x: f64| 1.0 / (1.0 + (-x).exp());
        let d = |a: usize, b: usize| {
            (0..4)
                .map(|k| m.output[[a, k]] * m.input[[b, k]])
                .sum::<f64>()
        };
        let expected = -sig(d(c, f)).ln() - negs.iter().map(|&n| sig(-d(n, f)).ln()).sum::<f64>();
        let got = pair_loss(&m, f as u32, c as u32, &[0, 3]);
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn context_gradient_with_zero_output() {
        let mut m = init_random(4, 3, 2).unwrap();
        m.input.row_mut(0).assign(&ndarray::arr1(&[0.1, -0.2, 0.3]));
        let mut g = SparseGradient::new(3);
        g.accumulate(&m, 0, 1, &[]);
        let gu = g.output_row(1).unwrap();
        for (a, b) in gu.iter().zip([0.1, -0.2, 0.3]) {
            assert!((a - (-0.5 * b)).abs() < 1e-15);
        }
    }

    fn finite_difference_check(m: &EmbeddingModel, focus: u32, context: u32, negs: &[u32]) -> f64 {
        let mut g = SparseGradient::new(m.dim());
        g.accumulate(m, focus, context, negs);
        let h = 1e-5;
        let mut worst: f64 = 0.0;
        let mut rows: Vec<(bool, u32)> = vec![(true, focus)];
        rows.extend(
            std::iter::once(context)
                .chain(negs.iter().copied())
                .map(|r| (false, r)),
        );
        rows.sort();
        rows.dedup();
        for (is_input, r) in rows {
            let analytic = if is_input {
                g.input_row(r)
            } else {
                g.output_row(r)
            }
            .unwrap();
            for k in 0..m.dim() {
                let mut plus = m.clone();
                let mut minus = m.clone();
                let (mp, mm) = if is_input {
                    (&mut plus.input, &mut minus.input)
                } else {
                    (&mut plus.output, &mut minus.output)
                };
                mp[[r as usize, k]] += h;
                mm[[r as usize, k]] -= h;
                let numeric = (pair_loss(&plus, focus, context, negs)
                    - pair_loss(&minus, focus, context, negs))
                    / (2.0 * h);
                let rel =
                    (analytic[k] - numeric).abs() / analytic[k].abs().max(numeric.abs()).max(1e-3);
                worst = worst.max(rel);
            }
        }
        worst
    }

    #[test]
    fn gradient_matches_finite_differences() {
        for s in 0..20 {
            let m = random_model(5, 4, s);
            let err = finite_difference_check(&m, 1, 3, &[0, 4, 2, 4, 1]);
            assert!(err < 1e-5, "seed {s}: {err}");
        }
    }

    #[test]
    fn untouched_rows_unchanged() {
        let mut m = random_model(8, 3, 7);
        let before = m.clone();
        let noise = NoiseDistribution::from_counts(&[1, 1, 1, 1, 1, 1, 1, 1], 0.75).unwrap();
        let config = TrainConfig {
            dim: 3,
            negatives: 2,
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let batch = [WordPair::natural(0, 1, 1)];
        // Recreate the negatives the step will draw.
        let negs = noise.negatives(1, 2, &mut ChaCha8Rng::seed_from_u64(1));
        train_step(&mut m, &batch, &noise, &config, &mut rng).unwrap();
        for r in 0..8u32 {
            if r != 0 {
                assert_eq!(m.input.row(r as usize), before.input.row(r as usize));
            }
            if r != 1 && !negs.contains(&r) {
                assert_eq!(m.output.row(r as usize), before.output.row(r as usize));
            }
        }
        assert_ne!(m.input.row(0), before.input.row(0));
    }

    #[test]
    fn zero_learning_rate_is_identity() {
        let v = vocab(6);
        let pairs: Vec<WordPair> = (0..30)
            .map(|i| WordPair::natural(i % 6, (i + 1) % 6, 1))
            .collect();
        let config = TrainConfig {
            dim: 4,
            learning_rate: 0.0,
            epochs: 2,
            ..Default::default()
        };
        let init = init_random(6, 4, 1).unwrap();
        let out = train(&pairs, &v, &config, init.clone()).unwrap();
        assert_eq!(out.model, init);
        assert_eq!(out.epoch_losses.len(), 2);
    }

    #[test]
    fn training_is_deterministic_and_learns() {
        let v = vocab(6);
        let pairs: Vec<WordPair> = (0..600)
            .map(|i| WordPair::natural(i % 6, (i + 1) % 6, 1))
            .collect();
        let config = TrainConfig {
            dim: 8,
            learning_rate: 0.05,
            seed: 3,
            ..Default::default()
        };
        let a = train(&pairs, &v, &config, init_random(6, 8, 1).unwrap()).unwrap();
        let b = train(&pairs, &v, &config, init_random(6, 8, 1).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.epoch_losses.last().unwrap() < &a.epoch_losses[0]);

        let par = TrainConfig {
            workers: 4,
            ..config
        };
        let c = train(&pairs, &v, &par, init_random(6, 8, 1).unwrap()).unwrap();
        let d = train(&pairs, &v, &par, init_random(6, 8, 1).unwrap()).unwrap();
        assert_eq!(c, d);
        assert!(c.epoch_losses.last().unwrap() < &c.epoch_losses[0]);
    }

    #[test]
    fn exploding_training_aborts() {
        let v = vocab(3);
        let pairs: Vec<WordPair> = (0..50)
            .map(|i| WordPair::natural(i % 3, (i + 1) % 3, 1))
            .collect();
        let config = TrainConfig {
            dim: 2,
            learning_rate: 1e200,
            ..Default::default()
        };
        let init = init_random(3, 2, 1).unwrap();
        assert!(matches!(
            train(&pairs, &v, &config, init),
            Err(Error::NonFiniteLoss { .. })
        ));
    }

    #[test]
    fn rejects_bad_input() {
        let v = vocab(3);
        let config = TrainConfig {
            dim: 2,
            ..Default::default()
        };
        let init = init_random(3, 2, 1).unwrap();
        assert!(train(&[], &v, &config, init.clone()).is_err());
        assert!(train(&[WordPair::natural(0, 7, 1)], &v, &config, init.clone()).is_err());
        let bad = TrainConfig {
            batch_size: 0,
            ..config
        };
        assert!(train(&[WordPair::natural(0, 1, 1)], &v, &bad, init).is_err());
    }
}
