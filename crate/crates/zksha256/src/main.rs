//! Command-line entry point wiring the full pipeline: hashing, proving,
//! verifying, NEAR block ingestion, and the benchmark suite.
//!
//! Exit codes: 0 success, 1 verification or runtime failure, 2 malformed
//! input or usage error. All failures print a single machine-parsable
//! `error: kind=... msg="..."` line to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zksha256::bench::{
    emit_csv, emit_markdown, emit_plot, run_suite, BenchConfig, default_bench_params,
};
use zksha256::near::{
    self, fetch_block, load_fixture, BlockId, NearBlockRecord, DEFAULT_RPC_ENDPOINT,
    RPC_ENDPOINT_ENV,
};
use zksha256::proof::{prove_consuming, setup, verify, Proof, ProverParams, VerifierData};
use zksha256::sha256::gadget::{build_sha256_circuit, generate_witness, publics_to_digest};
use zksha256::sha256::{digest, pad_message};
use zksha256::store::{load_artifact, save_artifact, ArtifactKind};

#[derive(Parser)]
#[command(
    name = "zksha256",
    about = "SHA-256 proof-of-computational-integrity toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the SHA-256 digest of a file or hex string.
    Digest(DigestArgs),
    /// Generate a proof that the digest of an input was computed correctly.
    Prove(ProveArgs),
    /// Verify a stored proof against an expected digest.
    Verify(VerifyArgs),
    /// Fetch a NEAR block over JSON-RPC and store its canonical bytes.
    FetchBlock(FetchBlockArgs),
    /// Run the benchmark suite and emit CSV/markdown/plot reports.
    Bench(BenchArgs),
}

#[derive(Args)]
struct DigestArgs {
    /// Read the message from this file.
    #[arg(long, conflicts_with = "hex", required_unless_present = "hex")]
    input: Option<PathBuf>,
    /// Use this hex string as the message.
    #[arg(long)]
    hex: Option<String>,
}

#[derive(Args)]
struct ParamArgs {
    /// log2 of the LDE blowup factor.
    #[arg(long, default_value_t = 2)]
    blowup_log: u32,
    /// Number of FRI queries.
    #[arg(long, default_value_t = 32)]
    queries: usize,
}

impl ParamArgs {
    fn to_params(&self) -> ProverParams {
        ProverParams {
            blowup_log: self.blowup_log,
            num_queries: self.queries,
            ..ProverParams::default()
        }
    }
}

#[derive(Args)]
struct ProveArgs {
    /// Read the message from this file.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    input: Option<PathBuf>,
    /// Prove a seeded random message of this many bytes instead.
    #[arg(long, value_name = "BYTES")]
    random: Option<u64>,
    /// PRNG seed for --random.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Where to write the proof artifact.
    #[arg(long)]
    out: PathBuf,
    /// Where to write the circuit artifact (optional; large).
    #[arg(long)]
    circuit_out: Option<PathBuf>,
    /// Where to write the verifier-data artifact (defaults to `<out>.vd`).
    #[arg(long)]
    verifier_data_out: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Proof artifact path.
    #[arg(long)]
    proof: PathBuf,
    /// Verifier-data artifact path.
    #[arg(long)]
    verifier_data: PathBuf,
    /// Expected SHA-256 digest, 64 hex chars.
    #[arg(long)]
    expect_digest: String,
}

#[derive(Args)]
struct FetchBlockArgs {
    /// JSON-RPC endpoint (falls back to $ZKSHA256_NEAR_RPC, then the
    /// public mainnet endpoint).
    #[arg(long)]
    rpc: Option<String>,
    /// Block hash (base58).
    #[arg(long, conflicts_with = "height", required_unless_present = "height")]
    hash: Option<String>,
    /// Block height.
    #[arg(long)]
    height: Option<u64>,
    /// Where to write the canonical block bytes.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Random-input sizes in bytes.
    #[arg(long, value_delimiter = ',', default_values_t = [10u64, 100, 1000, 10000])]
    sizes: Vec<u64>,
    /// Vendored fixture names to include ("all" for every reference block).
    #[arg(long, value_delimiter = ',')]
    fixtures: Vec<String>,
    /// Seed for the random inputs.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Timed repetitions per phase (median reported).
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    /// CSV report path (required).
    #[arg(long)]
    csv: PathBuf,
    /// Markdown report path.
    #[arg(long)]
    md: Option<PathBuf>,
    /// SVG plot path (a `.points.csv` sidecar is written next to it).
    #[arg(long)]
    plot: Option<PathBuf>,
    /// log2 of the LDE blowup factor.
    #[arg(long)]
    blowup_log: Option<u32>,
    /// Number of FRI queries.
    #[arg(long)]
    queries: Option<usize>,
}

/// Failure modes that map onto the documented exit codes.
enum CliError {
    /// Exit 1: a proof failed to verify or the digest comparison failed.
    Verification(String),
    /// Exit 1: a runtime operation (proving, network, report writing) failed.
    Runtime(String),
    /// Exit 2: unreadable/corrupt/ill-formed input.
    Malformed(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        let (kind, msg) = match self {
            Self::Verification(m) => ("verification", m),
            Self::Runtime(m) => ("runtime", m),
            Self::Malformed(m) => ("malformed-input", m),
        };
        eprintln!("error: kind={kind} msg={:?}", msg);
        match self {
            Self::Verification(_) | Self::Runtime(_) => ExitCode::from(1),
            Self::Malformed(_) => ExitCode::from(2),
        }
    }
}

fn read_input_file(path: &PathBuf) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Malformed(format!("cannot read {path:?}: {e}")))
}

fn cmd_digest(args: &DigestArgs) -> Result<(), CliError> {
    let message = match (&args.input, &args.hex) {
        (Some(path), None) => read_input_file(path)?,
        (None, Some(h)) => hex::decode(h.trim())
            .map_err(|e| CliError::Malformed(format!("invalid hex message: {e}")))?,
        _ => return Err(CliError::Malformed("pass exactly one of --input/--hex".into())),
    };
    println!("{}", hex::encode(digest(&message)));
    Ok(())
}

fn prove_message(
    message: &[u8],
    params: &ProverParams,
) -> Result<(Proof, VerifierData, zksha256::circuit::Circuit, [u8; 32]), CliError> {
    let blocks = pad_message(message).block_count();
    let layout = build_sha256_circuit(blocks)
        .map_err(|e| CliError::Runtime(format!("circuit generation failed: {e}")))?;
    let (witness, publics) = generate_witness(&layout, message)
        .map_err(|e| CliError::Runtime(format!("witness generation failed: {e}")))?;
    let pk = setup(&layout.circuit, params)
        .map_err(|e| CliError::Runtime(format!("preprocessing failed: {e}")))?;
    let (proof, vd) = prove_consuming(&layout.circuit, &witness, &publics, pk)
        .map_err(|e| CliError::Runtime(format!("proving failed: {e}")))?;
    let (digest_bytes, _) = publics_to_digest(&publics)
        .ok_or_else(|| CliError::Runtime("malformed public inputs".into()))?;
    Ok((proof, vd, layout.circuit, digest_bytes))
}

fn cmd_prove(args: &ProveArgs) -> Result<(), CliError> {
    let message = match (&args.input, args.random) {
        (Some(path), None) => read_input_file(path)?,
        (None, Some(n)) => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
            let mut m = vec![0u8; n as usize];
            rng.fill(&mut m[..]);
            m
        }
        _ => {
            return Err(CliError::Malformed(
                "pass exactly one of --input/--random".into(),
            ))
        }
    };
    let params = args.params.to_params();
    if !params.is_valid() {
        return Err(CliError::Malformed("invalid prover parameters".into()));
    }
    let (proof, vd, circuit, digest_bytes) = prove_message(&message, &params)?;

    let proof_bytes = proof.to_bytes();
    save_artifact(&args.out, ArtifactKind::Proof, &params, &proof_bytes)
        .map_err(|e| CliError::Runtime(format!("cannot write proof: {e}")))?;
    let vd_path = args
        .verifier_data_out
        .clone()
        .unwrap_or_else(|| args.out.with_extension("vd"));
    save_artifact(&vd_path, ArtifactKind::VerifierData, &params, &vd.to_bytes())
        .map_err(|e| CliError::Runtime(format!("cannot write verifier data: {e}")))?;
    let mut circuit_note = String::new();
    if let Some(circuit_path) = &args.circuit_out {
        let bytes = circuit.to_bytes();
        save_artifact(circuit_path, ArtifactKind::Circuit, &params, &bytes)
            .map_err(|e| CliError::Runtime(format!("cannot write circuit: {e}")))?;
        circuit_note = format!(" circuit_bytes={}", bytes.len());
    }
    println!(
        "digest={} message_bytes={} gates={} n={} proof_bytes={} proof={} verifier_data={}{}",
        hex::encode(digest_bytes),
        message.len(),
        circuit.gate_count,
        vd.n,
        proof_bytes.len(),
        args.out.display(),
        vd_path.display(),
        circuit_note
    );
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let expected: [u8; 32] = hex::decode(args.expect_digest.trim())
        .ok()
        .and_then(|v| v.try_into().ok())
        .ok_or_else(|| CliError::Malformed("--expect-digest must be 64 hex chars".into()))?;
    let (proof_params, proof_payload) = load_artifact(&args.proof, ArtifactKind::Proof)
        .map_err(|e| CliError::Malformed(format!("proof artifact: {e}")))?;
    let proof = Proof::from_bytes(&proof_payload)
        .map_err(|e| CliError::Malformed(format!("proof payload: {e}")))?;
    let (vd_params, vd_payload) = load_artifact(&args.verifier_data, ArtifactKind::VerifierData)
        .map_err(|e| CliError::Malformed(format!("verifier-data artifact: {e}")))?;
    let vd = VerifierData::from_bytes(&vd_payload)
        .map_err(|e| CliError::Malformed(format!("verifier-data payload: {e}")))?;
    if proof_params != proof.params || vd_params != vd.params {
        return Err(CliError::Malformed(
            "artifact header parameters disagree with payload".into(),
        ));
    }

    if !verify(&vd.circuit_digest, &vd, &proof.publics.clone(), &proof) {
        return Err(CliError::Verification(
            "cryptographic verification failed".into(),
        ));
    }
    let (proven_digest, length) = publics_to_digest(&proof.publics)
        .ok_or_else(|| CliError::Malformed("proof public inputs are not a digest".into()))?;
    if proven_digest != expected {
        return Err(CliError::Verification(format!(
            "digest mismatch: proof attests {} expected {}",
            hex::encode(proven_digest),
            hex::encode(expected)
        )));
    }
    println!(
        "verified digest={} message_bytes={length}",
        hex::encode(proven_digest)
    );
    Ok(())
}

fn cmd_fetch_block(args: &FetchBlockArgs) -> Result<(), CliError> {
    let endpoint = args
        .rpc
        .clone()
        .or_else(|| std::env::var(RPC_ENDPOINT_ENV).ok())
        .unwrap_or_else(|| DEFAULT_RPC_ENDPOINT.to_string());
    let id = match (&args.hash, args.height) {
        (Some(h), None) => BlockId::Hash(h.clone()),
        (None, Some(n)) => BlockId::Height(n),
        _ => {
            return Err(CliError::Malformed(
                "pass exactly one of --hash/--height".into(),
            ))
        }
    };
    let record = fetch_block(&endpoint, &id, None)
        .map_err(|e| CliError::Runtime(format!("fetch failed: {e}")))?;
    std::fs::write(&args.out, &record.raw_bytes)
        .map_err(|e| CliError::Runtime(format!("cannot write {:?}: {e}", args.out)))?;
    println!(
        "fetched height={} hash={} tx_count={} bytes={} out={}",
        record.height,
        record.block_hash,
        record.tx_count,
        record.raw_bytes.len(),
        args.out.display()
    );
    Ok(())
}

fn resolve_fixtures(names: &[String]) -> Result<Vec<NearBlockRecord>, CliError> {
    let dir = near::default_fixture_dir();
    let mut expanded: Vec<String> = Vec::new();
    for name in names {
        if name == "all" {
            expanded.extend(near::REFERENCE_BLOCKS.iter().map(|(n, ..)| n.to_string()));
        } else {
            expanded.push(name.clone());
        }
    }
    expanded
        .iter()
        .map(|name| {
            load_fixture(&dir, name)
                .map_err(|e| CliError::Malformed(format!("fixture {name:?}: {e}")))
        })
        .collect()
}

fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let mut params = default_bench_params();
    if let Some(b) = args.blowup_log {
        params.blowup_log = b;
    }
    if let Some(q) = args.queries {
        params.num_queries = q;
    }
    if !params.is_valid() {
        return Err(CliError::Malformed("invalid prover parameters".into()));
    }
    let config = BenchConfig {
        sizes: args.sizes.clone(),
        seed: args.seed,
        repeats: args.repeats,
        cheap_repeats: args.repeats.max(5),
        params,
        fixtures: resolve_fixtures(&args.fixtures)?,
    };
    let records =
        run_suite(&config).map_err(|e| CliError::Runtime(format!("bench suite failed: {e}")))?;
    emit_csv(&records, &args.csv)
        .map_err(|e| CliError::Runtime(format!("cannot write CSV: {e}")))?;
    if let Some(md) = &args.md {
        emit_markdown(&records, md)
            .map_err(|e| CliError::Runtime(format!("cannot write markdown: {e}")))?;
    }
    if let Some(plot) = &args.plot {
        emit_plot(&records, plot)
            .map_err(|e| CliError::Runtime(format!("cannot write plot: {e}")))?;
    }
    println!(
        "bench complete: records={} csv={}",
        records.len(),
        args.csv.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Digest(args) => cmd_digest(args),
        Command::Prove(args) => cmd_prove(args),
        Command::Verify(args) => cmd_verify(args),
        Command::FetchBlock(args) => cmd_fetch_block(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}
