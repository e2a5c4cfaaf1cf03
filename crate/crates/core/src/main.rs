use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use synaug::augment::{self, AugmentationPlan, RATIO_SWEEP};
use synaug::config::{self, Config};
use synaug::corpus::{self, TokenizedCorpus, Vocabulary};
use synaug::embed_io::{self, WordVectors};
use synaug::eval_extrinsic::KnnMode;
use synaug::eval_intrinsic::{self, DistanceKind, PairSetSizes, SimilarityDataset};
use synaug::lexicon::SynonymLexicon;
use synaug::pairgen::{self, Origin, PairFileHeader};
use synaug::pipeline::{self, ExperimentConfig, WmdEvaluation};
use synaug::sgns::{self, InitMode, TrainConfig};
use synaug::{par, Error, Result};

/// Skip-gram embeddings with synonym augmentation, and their evaluation.
#[derive(Parser, Debug)]
#[command(name = "synaug", version, args_override_self = true)]
struct Cli {
    /// Worker threads for data-parallel stages (0 = all cores). Results do
    /// not depend on this value.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// `key = value` file whose entries are read as flags of the subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split text files into sentences of lowercase tokens.
    Tokenize {
        #[arg(long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,
        /// Tokenized corpus, one sentence per line.
        #[arg(long)]
        out: PathBuf,
    },
    /// Count words of a tokenized corpus and prune rare ones.
    BuildVocab {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_count: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample (focus, context) pairs from a tokenized corpus.
    GenPairs {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        vocab: PathBuf,
        /// Maximum context offset C.
        #[arg(long, default_value_t = 5)]
        context: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mix synonym-substituted pairs into a natural pair file.
    Augment {
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        /// Fraction of the output that is augmented.
        #[arg(long, default_value_t = 0.25, conflicts_with = "ratio_sweep")]
        ratio: f64,
        /// Write one mixed file per preset ratio, named `<out stem>.rNNN.<ext>`
        /// with NNN the ratio in thousandths.
        #[arg(long, value_enum)]
        ratio_sweep: Option<Sweep>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train SGNS embeddings on a pair file.
    Train {
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        vocab: PathBuf,
        #[command(flatten)]
        train: TrainArgs,
        /// Input embeddings; `.bin` selects the binary format. The loss log
        /// goes to `<out stem>.loss.csv`.
        #[arg(long)]
        out: PathBuf,
        /// Also write the output (context) embeddings.
        #[arg(long)]
        output_embeddings: Option<PathBuf>,
        /// Write the model every N epochs as `<out stem>.epochN.<ext>` (0 = never).
        #[arg(long, default_value_t = 0)]
        checkpoint_every: usize,
    },
    /// Spearman correlation between embedding distances and human scores.
    EvalSim {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, required = true, num_args = 1..)]
        dataset: Vec<PathBuf>,
        /// Only score pairs whose words are in this vocabulary file.
        #[arg(long)]
        common_vocab: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Distance::Cosine)]
        distance: Distance,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mean cosine distance over synonym, contextual and random word pairs.
    EvalPairsets {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        vocab: PathBuf,
        /// Pair file; only natural pairs are used.
        #[arg(long)]
        pairs: PathBuf,
        /// Substitution file written by `augment`.
        #[arg(long)]
        subs: PathBuf,
        #[command(flatten)]
        sizes: SizeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// KNN document classification with Word Mover's Distance.
    EvalWmd {
        #[arg(long)]
        model: PathBuf,
        /// Restrict the model to this vocabulary first.
        #[arg(long)]
        vocab: Option<PathBuf>,
        #[command(flatten)]
        wmd: WmdArgs,
        /// Predictions CSV; the summary goes to `<out stem>.summary.csv`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Merge result CSVs into one long-format CSV `source,row,column,value`.
    Report {
        #[arg(long, required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every stage from raw text to evaluation.
    Pipeline {
        #[arg(long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_count: u64,
        #[arg(long, default_value_t = 5)]
        context: u32,
        #[arg(long, default_value_t = 0.25)]
        ratio: f64,
        #[command(flatten)]
        train: TrainArgs,
        #[arg(long, num_args = 1..)]
        dataset: Vec<PathBuf>,
        #[arg(long)]
        common_vocab: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Distance::Cosine)]
        distance: Distance,
        /// Also compute pair-set distance statistics.
        #[arg(long)]
        pairsets: bool,
        #[command(flatten)]
        sizes: SizeArgs,
        /// Labeled document directory for WMD classification.
        #[arg(long)]
        wmd_corpus: Option<PathBuf>,
        #[arg(long)]
        split_manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Protocol::Loo)]
        protocol: Protocol,
    },
}

#[derive(Args, Debug)]
struct TrainArgs {
    #[arg(long, default_value_t = 300)]
    dim: usize,
    #[arg(long, default_value_t = 5)]
    negatives: usize,
    #[arg(long, default_value_t = 10)]
    epochs: usize,
    #[arg(long, default_value_t = 0.01)]
    lr: f64,
    #[arg(long, default_value_t = 10)]
    batch: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Init::Random)]
    init: Init,
    /// Embedding file for `--init pretrained`.
    #[arg(long)]
    pretrained: Option<PathBuf>,
    #[arg(long, default_value_t = sgns::DEFAULT_NOISE_EXPONENT)]
    noise_exponent: f64,
    /// Batches computed in parallel per update. Changes the result; 1 is
    /// plain sequential SGD.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl TrainArgs {
    fn config(&self) -> TrainConfig {
        TrainConfig {
            dim: self.dim,
            negatives: self.negatives,
            epochs: self.epochs,
            learning_rate: self.lr,
            batch_size: self.batch,
            seed: self.seed,
            init_mode: match self.init {
                Init::Random => InitMode::Random,
                Init::Pretrained => InitMode::Pretrained,
            },
            noise_exponent: self.noise_exponent,
            workers: self.workers,
        }
    }
}

#[derive(Args, Debug)]
struct SizeArgs {
    #[arg(long, default_value_t = 1000)]
    synonym_pairs: usize,
    #[arg(long, default_value_t = 1000)]
    contextual_pairs: usize,
    #[arg(long, default_value_t = 1000)]
    random_pairs: usize,
}

impl SizeArgs {
    fn sizes(&self) -> PairSetSizes {
        PairSetSizes {
            synonym: self.synonym_pairs,
            contextual: self.contextual_pairs,
            random: self.random_pairs,
        }
    }
}

#[derive(Args, Debug)]
struct WmdArgs {
    /// Directory of `<class>/<doc>` text files.
    #[arg(long)]
    corpus_root: PathBuf,
    /// Lines `<class>/<doc>\t<train|test>`.
    #[arg(long)]
    split_manifest: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Protocol::Loo)]
    protocol: Protocol,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Sweep {
    Standard,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Init {
    Random,
    Pretrained,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Distance {
    Cosine,
    Euclidean,
}

impl From<Distance> for DistanceKind {
    fn from(d: Distance) -> Self {
        match d {
            Distance::Cosine => DistanceKind::Cosine,
            Distance::Euclidean => DistanceKind::Euclidean,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Exhaustive,
    Pruned,
}

impl From<Mode> for KnnMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exhaustive => KnnMode::Exhaustive,
            Mode::Pruned => KnnMode::Pruned,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Protocol {
    /// Leave-one-out over the training split.
    Loo,
    /// Classify the test split against the training split.
    Heldout,
}

fn wmd_evaluation(
    corpus_root: PathBuf,
    split_manifest: Option<PathBuf>,
    k: usize,
    mode: Mode,
    protocol: Protocol,
) -> WmdEvaluation {
    WmdEvaluation {
        corpus_root,
        split_manifest,
        k,
        mode: mode.into(),
        leave_one_out: matches!(protocol, Protocol::Loo),
    }
}

/// `dir/stem.ext` → `dir/stem<suffix>.ext`.
fn with_stem_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}{suffix}.{ext}"),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}

/// `dir/stem.ext` → `dir/stem<tail>`.
fn stem_sibling(path: &Path, tail: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    path.with_file_name(format!("{stem}{tail}"))
}

fn appended(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Every argument of the subcommand with its effective value, defaults
/// included, in declaration order.
fn effective_params(cmd: &clap::Command, matches: &ArgMatches) -> Config {
    let mut entries = Vec::new();
    for arg in cmd.get_arguments() {
        let id = arg.get_id().as_str();
        let Some(long) = arg.get_long() else { continue };
        if matches!(long, "config" | "help" | "version") {
            continue;
        }
        if let Ok(Some(values)) = matches.try_get_raw(id) {
            for v in values {
                entries.push((long.to_owned(), v.to_string_lossy().into_owned()));
            }
        }
    }
    Config { entries }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();

    let mut cmd = Cli::command();
    cmd.build();
    let names: Vec<String> = cmd
        .get_subcommands()
        .map(|s| s.get_name().to_owned())
        .collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let args = match config::expand_args(std::env::args().collect(), &names) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let matches = cmd
        .clone()
        .try_get_matches_from(args)
        .unwrap_or_else(|e| e.exit());
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());

    let (name, sub_matches) = matches.subcommand().expect("subcommand is required");
    let sub_cmd = cmd.find_subcommand(name).expect("known subcommand");
    let params = effective_params(sub_cmd, sub_matches);

    let threads = par::init_threads(cli.threads);
    log::debug!("{threads} worker threads");
    match run(cli.command, name, &params) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn write_manifest(path: &Path, command: &str, params: &Config, notes: &[String]) -> Result<()> {
    write_file(path, config::render_manifest(command, params, notes))
}

fn seed_note(stage: &str, top: u64) -> String {
    format!("{stage} seed {}", pipeline::stage_seed(top, stage))
}

fn run(command: Command, name: &str, params: &Config) -> Result<()> {
    match command {
        Command::Tokenize { input, out } => {
            let corpus = corpus::tokenize_files(&input)?;
            write_file(&out, corpus.to_lines())?;
            log::info!(
                "{} sentences, {} tokens",
                corpus.sentences.len(),
                corpus.num_tokens()
            );
            write_manifest(&appended(&out, ".manifest"), name, params, &[])
        }
        Command::BuildVocab {
            corpus,
            min_count,
            out,
        } => {
            let c = TokenizedCorpus::from_lines(&read_to_string(&corpus)?);
            let vocab = corpus::build_vocabulary(&c, min_count)?;
            vocab.write(&out)?;
            log::info!("{} words with count >= {min_count}", vocab.len());
            write_manifest(&appended(&out, ".manifest"), name, params, &[])
        }
        Command::GenPairs {
            corpus,
            vocab,
            context,
            seed,
            out,
        } => {
            let c = TokenizedCorpus::from_lines(&read_to_string(&corpus)?);
            let vocab = Vocabulary::read(&vocab)?;
            let encoded = corpus::encode(&c, &vocab);
            let stage = pipeline::stage_seed(seed, pipeline::STAGE_PAIRS);
            let pairs = pairgen::generate_pairs(&encoded, context, stage)?;
            let header = PairFileHeader {
                max_context: context,
                seed: stage,
                ..Default::default()
            };
            pairgen::write_pairs(&out, &header, &pairs)?;
            log::info!("{} pairs", pairs.len());
            let notes = [seed_note(pipeline::STAGE_PAIRS, seed)];
            write_manifest(&appended(&out, ".manifest"), name, params, &notes)
        }
        Command::Augment {
            pairs,
            vocab,
            lexicon,
            ratio,
            ratio_sweep,
            seed,
            out,
        } => {
            let (header, natural) = pairgen::read_pairs(&pairs)?;
            let natural: Vec<_> = natural
                .into_iter()
                .filter(|p| p.origin == Origin::Natural)
                .collect();
            let vocab = Vocabulary::read(&vocab)?;
            let (lex, report) = SynonymLexicon::load(&lexicon)?;
            log::info!(
                "lexicon: {} words; dropped {} self-synonyms, {} multi-token",
                lex.len(),
                report.self_synonyms,
                report.multi_token
            );
            let pool = augment::generate_augmented_pairs(
                &natural,
                &lex,
                &vocab,
                pipeline::stage_seed(seed, pipeline::STAGE_AUGMENT),
            )?;
            log::info!("{} candidate augmented pairs", pool.len());
            let mix_seed = pipeline::stage_seed(seed, pipeline::STAGE_MIX);
            let ratios: Vec<(f64, PathBuf)> = match ratio_sweep {
                None => vec![(ratio, out.clone())],
                Some(Sweep::Standard) => RATIO_SWEEP
                    .iter()
                    .map(|&r| {
                        (
                            r,
                            with_stem_suffix(
                                &out,
                                &format!(".r{:03}", (r * 1000.0).round() as u64),
                            ),
                        )
                    })
                    .collect(),
            };
            for (r, path) in ratios {
                let plan = AugmentationPlan::new(r, mix_seed)?;
                let mixed = augment::mix(&natural, &pool, &plan)?;
                let h = PairFileHeader {
                    ratio: Some(r),
                    augment_seed: Some(mix_seed),
                    ..header.clone()
                };
                pairgen::write_pairs(&path, &h, &mixed.pairs)?;
                augment::write_substitutions(
                    &with_stem_suffix(&path, ".subs"),
                    &mixed.substitutions,
                )?;
                log::info!(
                    "ratio {r}: {} pairs, augmented fraction {:.4}",
                    mixed.pairs.len(),
                    mixed.augmented_fraction()
                );
            }
            let notes = [
                seed_note(pipeline::STAGE_AUGMENT, seed),
                seed_note(pipeline::STAGE_MIX, seed),
            ];
            write_manifest(&appended(&out, ".manifest"), name, params, &notes)
        }
        Command::Train {
            pairs,
            vocab,
            train,
            out,
            output_embeddings,
            checkpoint_every,
        } => {
            let (_, dataset) = pairgen::read_pairs(&pairs)?;
            let vocab = Vocabulary::read(&vocab)?;
            let cfg = train.config();
            let pretrained = match (&train.pretrained, cfg.init_mode) {
                (Some(p), InitMode::Pretrained) => Some(embed_io::read(p)?),
                _ => None,
            };
            let (init, coverage) = pipeline::initial_model(&vocab, &cfg, pretrained.as_ref())?;
            if let Some(c) = coverage {
                log::info!("pretrained coverage {c:.4}");
            }
            let train_cfg = TrainConfig {
                seed: pipeline::stage_seed(cfg.seed, pipeline::STAGE_TRAIN),
                ..cfg.clone()
            };
            let outcome = sgns::train_with(&dataset, &vocab, &train_cfg, init, |epoch, model| {
                if checkpoint_every > 0 && (epoch + 1) % checkpoint_every == 0 {
                    let path = with_stem_suffix(&out, &format!(".epoch{}", epoch + 1));
                    embed_io::write(&path, &model.input_vectors(&vocab))?;
                }
                Ok(())
            })?;
            embed_io::write(&out, &outcome.model.input_vectors(&vocab))?;
            if let Some(p) = &output_embeddings {
                embed_io::write(p, &outcome.model.output_vectors(&vocab))?;
            }
            write_file(
                &stem_sibling(&out, ".loss.csv"),
                sgns::loss_csv(&outcome.epoch_losses),
            )?;
            let notes = [
                seed_note(pipeline::STAGE_INIT, cfg.seed),
                seed_note(pipeline::STAGE_TRAIN, cfg.seed),
            ];
            write_manifest(&appended(&out, ".manifest"), name, params, &notes)
        }
        Command::EvalSim {
            model,
            dataset,
            common_vocab,
            distance,
            out,
        } => {
            let vectors = embed_io::read(&model)?;
            let common = match &common_vocab {
                Some(p) => Vocabulary::read(p)?,
                None => Vocabulary::from_entries(
                    vectors.words().iter().map(|w| (w.clone(), 1)).collect(),
                    1,
                )?,
            };
            let mut csv = String::from("dataset,pairs_used,rho\n");
            for path in &dataset {
                let ds = SimilarityDataset::load(path)?;
                let r = eval_intrinsic::similarity_correlation(
                    &vectors,
                    &ds,
                    &common,
                    distance.into(),
                )?;
                csv.push_str(&format!("{},{},{}\n", ds.name, r.pairs_used, r.rho));
                log::info!(
                    "{}: rho {:.4} over {}/{} pairs",
                    ds.name,
                    r.rho,
                    r.pairs_used,
                    r.pairs_total
                );
            }
            write_file(&out, &csv)?;
            print!("{csv}");
            write_manifest(&appended(&out, ".manifest"), name, params, &[])
        }
        Command::EvalPairsets {
            model,
            vocab,
            pairs,
            subs,
            sizes,
            seed,
            out,
        } => {
            let vocab = Vocabulary::read(&vocab)?;
            let vectors = aligned_model(&model, &vocab)?;
            let (_, pairs) = pairgen::read_pairs(&pairs)?;
            let natural: Vec<_> = pairs
                .into_iter()
                .filter(|p| p.origin == Origin::Natural)
                .collect();
            let subs = augment::read_substitutions(&subs)?;
            let sets = eval_intrinsic::build_pairsets(
                &subs,
                &natural,
                vocab.len(),
                sizes.sizes(),
                pipeline::stage_seed(seed, pipeline::STAGE_PAIRSETS),
            )?;
            let csv = pipeline::pairsets_csv(&vectors, &sets)?;
            write_file(&out, &csv)?;
            print!("{csv}");
            let notes = [seed_note(pipeline::STAGE_PAIRSETS, seed)];
            write_manifest(&appended(&out, ".manifest"), name, params, &notes)
        }
        Command::EvalWmd {
            model,
            vocab,
            wmd,
            out,
        } => {
            let mut vectors = embed_io::read(&model)?;
            if let Some(v) = &vocab {
                vectors = embed_io::crop(&vectors, &Vocabulary::read(v)?)?;
            }
            let w = wmd_evaluation(
                wmd.corpus_root,
                wmd.split_manifest,
                wmd.k,
                wmd.mode,
                wmd.protocol,
            );
            let (preds, summary) = pipeline::evaluate_wmd(&vectors, &w)?;
            write_file(&out, preds)?;
            write_file(&stem_sibling(&out, ".summary.csv"), &summary)?;
            print!("{summary}");
            write_manifest(&appended(&out, ".manifest"), name, params, &[])
        }
        Command::Report { inputs, out } => {
            let mut csv = String::from("source,row,column,value\n");
            for path in &inputs {
                let text = read_to_string(path)?;
                let mut lines = text.lines().filter(|l| !l.trim().is_empty());
                let Some(header) = lines.next() else { continue };
                let cols: Vec<&str> = header.split(',').collect();
                for (row, line) in lines.enumerate() {
                    let values: Vec<&str> = line.split(',').collect();
                    if values.len() != cols.len() {
                        return Err(Error::parse(
                            "result CSV",
                            row + 2,
                            format!("{} fields, header has {}", values.len(), cols.len()),
                        ));
                    }
                    for (c, v) in cols.iter().zip(values) {
                        csv.push_str(&format!("{},{},{},{}\n", path.display(), row + 1, c, v));
                    }
                }
            }
            write_file(&out, csv)?;
            write_manifest(&appended(&out, ".manifest"), name, params, &[])
        }
        Command::Pipeline {
            input,
            lexicon,
            out_dir,
            min_count,
            context,
            ratio,
            train,
            dataset,
            common_vocab,
            distance,
            pairsets,
            sizes,
            wmd_corpus,
            split_manifest,
            k,
            mode,
            protocol,
        } => {
            let cfg = ExperimentConfig {
                inputs: input,
                lexicon,
                out_dir: out_dir.clone(),
                min_count,
                max_context: context,
                ratio,
                seed: train.seed,
                train: train.config(),
                pretrained: train.pretrained.clone(),
                similarity_datasets: dataset,
                common_vocab,
                distance: distance.into(),
                pairset_sizes: pairsets.then(|| sizes.sizes()),
                wmd: wmd_corpus.map(|root| wmd_evaluation(root, split_manifest, k, mode, protocol)),
            };
            let summary = pipeline::run_experiment(&cfg)?;
            log::info!(
                "vocabulary {}, natural pairs {}, training pairs {} ({:.4} augmented), final loss {:.6}",
                summary.vocab_size,
                summary.natural_pairs,
                summary.training_pairs,
                summary.augmented_fraction,
                summary.final_loss
            );
            let notes: Vec<String> = [
                pipeline::STAGE_PAIRS,
                pipeline::STAGE_AUGMENT,
                pipeline::STAGE_MIX,
                pipeline::STAGE_INIT,
                pipeline::STAGE_TRAIN,
                pipeline::STAGE_PAIRSETS,
            ]
            .iter()
            .map(|s| seed_note(s, train.seed))
            .collect();
            write_manifest(&out_dir.join("manifest.conf"), name, params, &notes)
        }
    }
}

/// Load a model and order its rows by vocabulary id.
fn aligned_model(path: &Path, vocab: &Vocabulary) -> Result<WordVectors> {
    let vectors = embed_io::crop(&embed_io::read(path)?, vocab)?;
    if vectors.len() != vocab.len() {
        return Err(Error::Invalid(format!(
            "{}: model covers {} of {} vocabulary words",
            path.display(),
            vectors.len(),
            vocab.len()
        )));
    }
    Ok(vectors)
}
