//! End-to-end experiment: tokenize, build the vocabulary, sample pairs,
//! augment, train, and evaluate. All randomness derives from one top-level
//! seed through [`crate::seed::derive`] with the stage names below.

use std::path::{Path, PathBuf};

use crate::augment::{self, AugmentationPlan, AugmentedPairs, MixedDataset};
use crate::corpus::{self, EncodedCorpus, TokenizedCorpus, Vocabulary};
use crate::embed_io::{self, WordVectors};
use crate::error::{Error, Result};
use crate::eval_extrinsic::{self, KnnMode, Split, WmdSpace};
use crate::eval_intrinsic::{self, DistanceKind, PairSetSizes, SimilarityDataset};
use crate::lexicon::SynonymLexicon;
use crate::pairgen::{self, PairFileHeader, WordPair};
use crate::seed;
use crate::sgns::{self, EmbeddingModel, InitMode, TrainConfig, TrainOutcome};

pub const STAGE_PAIRS: &str = "stage-pairs";
pub const STAGE_AUGMENT: &str = "stage-augment";
pub const STAGE_MIX: &str = "stage-mix";
pub const STAGE_INIT: &str = "stage-init";
pub const STAGE_TRAIN: &str = "stage-train";
pub const STAGE_PAIRSETS: &str = "stage-pairsets";

pub fn stage_seed(top: u64, stage: &str) -> u64 {
    seed::derive(top, stage, 0)
}

/// Everything needed before choosing an augmentation ratio.
#[derive(Debug, Clone)]
pub struct PreparedData {
    pub vocab: Vocabulary,
    pub encoded: EncodedCorpus,
    pub natural: Vec<WordPair>,
    pub augmented: AugmentedPairs,
}

pub fn prepare(
    corpus: &TokenizedCorpus,
    lexicon: &SynonymLexicon,
    min_count: u64,
    max_context: u32,
    top_seed: u64,
) -> Result<PreparedData> {
    let vocab = corpus::build_vocabulary(corpus, min_count)?;
    let encoded = corpus::encode(corpus, &vocab);
    let natural =
        pairgen::generate_pairs(&encoded, max_context, stage_seed(top_seed, STAGE_PAIRS))?;
    let augmented = augment::generate_augmented_pairs(
        &natural,
        lexicon,
        &vocab,
        stage_seed(top_seed, STAGE_AUGMENT),
    )?;
    Ok(PreparedData {
        vocab,
        encoded,
        natural,
        augmented,
    })
}

impl PreparedData {
    pub fn mix(&self, ratio: f64, top_seed: u64) -> Result<MixedDataset> {
        let plan = AugmentationPlan::new(ratio, stage_seed(top_seed, STAGE_MIX))?;
        augment::mix(&self.natural, &self.augmented, &plan)
    }
}

pub fn initial_model(
    vocab: &Vocabulary,
    config: &TrainConfig,
    pretrained: Option<&WordVectors>,
) -> Result<(EmbeddingModel, Option<f64>)> {
    let seed = stage_seed(config.seed, STAGE_INIT);
    match (config.init_mode, pretrained) {
        (InitMode::Random, _) => Ok((sgns::init_random(vocab.len(), config.dim, seed)?, None)),
        (InitMode::Pretrained, Some(p)) => {
            let init = sgns::init_pretrained(vocab, p, config.dim, seed)?;
            Ok((init.model, Some(init.coverage)))
        }
        (InitMode::Pretrained, None) => Err(Error::Invalid(
            "pretrained init requires an embedding file".into(),
        )),
    }
}

/// Train on a pair dataset with the training sub-seed of `config.seed`.
pub fn train(
    dataset: &[WordPair],
    vocab: &Vocabulary,
    config: &TrainConfig,
    initial: EmbeddingModel,
) -> Result<TrainOutcome> {
    let cfg = TrainConfig {
        seed: stage_seed(config.seed, STAGE_TRAIN),
        ..config.clone()
    };
    sgns::train(dataset, vocab, &cfg, initial)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WmdEvaluation {
    pub corpus_root: PathBuf,
    pub split_manifest: Option<PathBuf>,
    pub k: usize,
    pub mode: KnnMode,
    /// Leave-one-out over the training split, or train → test.
    pub leave_one_out: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub inputs: Vec<PathBuf>,
    pub lexicon: PathBuf,
    pub out_dir: PathBuf,
    pub min_count: u64,
    pub max_context: u32,
    pub ratio: f64,
    pub seed: u64,
    pub train: TrainConfig,
    pub pretrained: Option<PathBuf>,
    pub similarity_datasets: Vec<PathBuf>,
    pub common_vocab: Option<PathBuf>,
    pub distance: DistanceKind,
    pub pairset_sizes: Option<PairSetSizes>,
    pub wmd: Option<WmdEvaluation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub vocab_size: usize,
    pub natural_pairs: usize,
    pub training_pairs: usize,
    pub augmented_fraction: f64,
    pub final_loss: f64,
    pub pretrained_coverage: Option<f64>,
    pub artifacts: Vec<PathBuf>,
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Run every configured stage, writing artifacts into `out_dir`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let out = |name: &str| cfg.out_dir.join(name);
    let mut artifacts = Vec::new();

    let corpus = corpus::tokenize_files(&cfg.inputs)?;
    write_file(&out("corpus.txt"), corpus.to_lines())?;
    artifacts.push(out("corpus.txt"));

    let (lexicon, report) = SynonymLexicon::load(&cfg.lexicon)?;
    log::info!(
        "lexicon: {} words, {} records dropped ({} self, {} multi-token)",
        lexicon.len(),
        report.dropped(),
        report.self_synonyms,
        report.multi_token
    );

    let prepared = prepare(&corpus, &lexicon, cfg.min_count, cfg.max_context, cfg.seed)?;
    prepared.vocab.write(&out("vocab.txt"))?;
    artifacts.push(out("vocab.txt"));
    let header = PairFileHeader {
        max_context: cfg.max_context,
        seed: stage_seed(cfg.seed, STAGE_PAIRS),
        ..Default::default()
    };
    pairgen::write_pairs(&out("pairs.txt"), &header, &prepared.natural)?;
    artifacts.push(out("pairs.txt"));

    let mixed = prepared.mix(cfg.ratio, cfg.seed)?;
    let mixed_header = PairFileHeader {
        ratio: Some(cfg.ratio),
        augment_seed: Some(stage_seed(cfg.seed, STAGE_MIX)),
        ..header
    };
    pairgen::write_pairs(&out("mixed_pairs.txt"), &mixed_header, &mixed.pairs)?;
    augment::write_substitutions(&out("subs.txt"), &mixed.substitutions)?;
    artifacts.push(out("mixed_pairs.txt"));
    artifacts.push(out("subs.txt"));

    let pretrained = cfg.pretrained.as_deref().map(embed_io::read).transpose()?;
    let train_cfg = TrainConfig {
        seed: cfg.seed,
        ..cfg.train.clone()
    };
    let (init, coverage) = initial_model(&prepared.vocab, &train_cfg, pretrained.as_ref())?;
    if let Some(c) = coverage {
        log::info!("pretrained coverage {:.4}", c);
    }
    let outcome = train(&mixed.pairs, &prepared.vocab, &train_cfg, init)?;
    let vectors = outcome.model.input_vectors(&prepared.vocab);
    embed_io::write_text(&out("model.txt"), &vectors)?;
    embed_io::write_text(
        &out("model.output.txt"),
        &outcome.model.output_vectors(&prepared.vocab),
    )?;
    write_file(&out("loss.csv"), sgns::loss_csv(&outcome.epoch_losses))?;
    artifacts.extend([out("model.txt"), out("model.output.txt"), out("loss.csv")]);

    if !cfg.similarity_datasets.is_empty() {
        let common = match &cfg.common_vocab {
            Some(p) => Vocabulary::read(p)?,
            None => prepared.vocab.clone(),
        };
        let mut csv = String::from("dataset,pairs_used,rho\n");
        for path in &cfg.similarity_datasets {
            let ds = SimilarityDataset::load(path)?;
            let r = eval_intrinsic::similarity_correlation(&vectors, &ds, &common, cfg.distance)?;
            csv.push_str(&format!("{},{},{}\n", ds.name, r.pairs_used, r.rho));
        }
        write_file(&out("sim.csv"), csv)?;
        artifacts.push(out("sim.csv"));
    }

    if let Some(sizes) = cfg.pairset_sizes {
        let sets = eval_intrinsic::build_pairsets(
            &mixed.substitutions,
            &prepared.natural,
            prepared.vocab.len(),
            sizes,
            stage_seed(cfg.seed, STAGE_PAIRSETS),
        )?;
        write_file(&out("pairsets.csv"), pairsets_csv(&vectors, &sets)?)?;
        artifacts.push(out("pairsets.csv"));
    }

    if let Some(w) = &cfg.wmd {
        let (preds, summary) = evaluate_wmd(&vectors, w)?;
        write_file(&out("wmd_predictions.csv"), preds)?;
        write_file(&out("wmd_summary.csv"), summary)?;
        artifacts.extend([out("wmd_predictions.csv"), out("wmd_summary.csv")]);
    }

    Ok(ExperimentSummary {
        vocab_size: prepared.vocab.len(),
        natural_pairs: prepared.natural.len(),
        training_pairs: mixed.pairs.len(),
        augmented_fraction: mixed.augmented_fraction(),
        final_loss: *outcome.epoch_losses.last().unwrap_or(&f64::NAN),
        pretrained_coverage: coverage,
        artifacts,
    })
}

/// CSV `set,n,mean,std`.
pub fn pairsets_csv(vectors: &WordVectors, sets: &[eval_intrinsic::PairSet]) -> Result<String> {
    let mut csv = String::from("set,n,mean,std\n");
    for set in sets {
        let s = eval_intrinsic::pairset_stats(vectors, set)?;
        csv.push_str(&format!(
            "{},{},{},{}\n",
            set.kind.name(),
            s.n,
            s.mean,
            s.std
        ));
    }
    Ok(csv)
}

/// KNN/WMD classification of a labeled directory corpus. Returns the
/// predictions CSV and the summary CSV.
pub fn evaluate_wmd(vectors: &WordVectors, w: &WmdEvaluation) -> Result<(String, String)> {
    let manifest = match &w.split_manifest {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            Some(eval_extrinsic::parse_split_manifest(&text)?)
        }
        None => None,
    };
    let space = WmdSpace::new(vectors);
    let train =
        eval_extrinsic::load_labeled_corpus(&w.corpus_root, manifest.as_ref(), Split::Train)?;
    let (train_docs, train_idx, excluded) = eval_extrinsic::to_nbow(&train.documents, vectors);
    if !excluded.is_empty() {
        log::warn!(
            "{} training documents have no in-vocabulary token and were excluded",
            excluded.len()
        );
    }
    let (result, ids, truth) = if w.leave_one_out {
        let r = eval_extrinsic::knn_leave_one_out(&space, &train_docs, w.k, w.mode)?;
        let ids: Vec<&str> = train_idx
            .iter()
            .map(|&i| train.documents[i].doc_id.as_str())
            .collect();
        let truth = train_docs.iter().map(|d| d.label).collect::<Vec<_>>();
        (r, ids, truth)
    } else {
        let test =
            eval_extrinsic::load_labeled_corpus(&w.corpus_root, manifest.as_ref(), Split::Test)?;
        let (test_docs, test_idx, excluded) = eval_extrinsic::to_nbow(&test.documents, vectors);
        if !excluded.is_empty() {
            log::warn!(
                "{} test documents have no in-vocabulary token and were excluded",
                excluded.len()
            );
        }
        let r = eval_extrinsic::knn_classify(&space, &test_docs, &train_docs, w.k, w.mode)?;
        let ids: Vec<String> = test_idx
            .iter()
            .map(|&i| test.documents[i].doc_id.clone())
            .collect();
        let truth = test_docs.iter().map(|d| d.label).collect::<Vec<_>>();
        let preds = eval_extrinsic::predictions_csv(
            &ids.iter().map(String::as_str).collect::<Vec<_>>(),
            &truth,
            &r.predictions,
            &train.classes,
        );
        return Ok((preds, eval_extrinsic::summary_csv(r.correct, r.total)?));
    };
    let preds = eval_extrinsic::predictions_csv(&ids, &truth, &result.predictions, &train.classes);
    Ok((
        preds,
        eval_extrinsic::summary_csv(result.correct, result.total)?,
    ))
}
