//! Benchmark harness: times native hashing, circuit generation, proving and
//! verification in both seconds and cycles, records circuit/proof sizes, and
//! emits CSV, markdown-table and SVG-plot reports.
//!
//! Cycle counts come from the hardware timestamp counter when the target has
//! one; otherwise they are derived as `seconds * clock_hz` from a spin-loop
//! calibration, and the record's `cycle_source` column says so.

use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::near::NearBlockRecord;
use crate::proof::{prove_consuming, setup, verify, ProveError, ProverParams, SetupError};
use crate::sha256::gadget::{build_sha256_circuit, generate_witness, publics_to_digest, GadgetError};
use crate::sha256::{digest_counted, pad_message};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("circuit generation failed: {0}")]
    Gadget(#[from] GadgetError),
    #[error("preprocessing failed: {0}")]
    Setup(#[from] SetupError),
    #[error("proving failed: {0}")]
    Prove(#[from] ProveError),
    #[error("suite aborted: proof for case {label:?} failed verification")]
    VerificationFailed { label: String },
    #[error("suite aborted: proven digest for case {label:?} disagrees with the native digest")]
    DigestMismatch { label: String },
    #[error("CSV error: {0}")]
    Csv(String),
    #[error("invalid bench config: {0}")]
    BadConfig(&'static str),
    #[error("plot needs at least 2 records, got {0}")]
    TooFewRecords(usize),
}

impl From<csv::Error> for BenchError {
    fn from(e: csv::Error) -> Self {
        Self::Csv(e.to_string())
    }
}

/// One benchmark case: the twelve measured metrics plus measurement metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub label: String,
    pub input_bytes: u64,
    /// Number of SHA-256 compression blocks after padding.
    pub block_count: u64,
    pub native_cycles: u64,
    pub native_seconds: f64,
    pub circuit_gen_cycles: u64,
    pub circuit_gen_seconds: f64,
    pub prove_cycles: u64,
    pub prove_seconds: f64,
    pub verify_cycles: u64,
    pub verify_seconds: f64,
    pub circuit_gates: u64,
    pub proof_bytes: u64,
    /// Timed repetitions per phase (medians reported).
    pub repeats: u64,
    /// Calibrated cycle frequency used for the seconds/cycles cross-check.
    pub clock_hz: f64,
    /// "rdtsc" when the hardware counter was used, "spin-calibrated" when
    /// cycles are derived from wall time.
    pub cycle_source: String,
    /// Threads used by the prover (the pipeline is single-threaded).
    pub threads: u64,
}

/// Suite configuration; `Default` reproduces the reference protocol sizes.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Random-input sizes in bytes.
    pub sizes: Vec<u64>,
    /// Seed for the input-generating PRNG; fixed seed means identical inputs.
    pub seed: u64,
    /// Timed repetitions for the expensive phases (circuit generation and
    /// proving); medians are reported. A warm-up run is discarded first
    /// whenever repeats > 1.
    pub repeats: usize,
    /// Timed repetitions for the cheap phases (native hashing and
    /// verification), where extra runs cost microseconds to milliseconds and
    /// stabilize the medians.
    pub cheap_repeats: usize,
    pub params: ProverParams,
    /// Extra cases hashing real block bytes, appended after the size cases.
    pub fixtures: Vec<NearBlockRecord>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: vec![10, 100, 1000, 10000],
            seed: 42,
            repeats: 5,
            cheap_repeats: 5,
            params: default_bench_params(),
            fixtures: Vec::new(),
        }
    }
}

/// Parameters used for benchmarking: a rate-1/2 LDE keeps the largest case
/// (10000 bytes, 2^23 rows) within desktop memory.
pub fn default_bench_params() -> ProverParams {
    ProverParams {
        blowup_log: 1,
        ..ProverParams::default()
    }
}

// --- clock -----------------------------------------------------------------

#[cfg(target_arch = "x86_64")]
fn read_tsc() -> Option<u64> {
    // Safe on every x86_64 CPU this crate targets; RDTSC is unprivileged.
    Some(unsafe { core::arch::x86_64::_rdtsc() })
}

#[cfg(not(target_arch = "x86_64"))]
fn read_tsc() -> Option<u64> {
    None
}

/// A calibrated cycle clock. With a timestamp counter, `hz` is the measured
/// counter frequency; without one, `hz` is estimated from a dependent-add
/// spin loop (≈1 cycle per iteration) and cycles are derived from wall time.
#[derive(Clone, Copy, Debug)]
pub struct Clock {
    pub hz: f64,
    pub has_tsc: bool,
}

impl Clock {
    pub fn calibrate() -> Self {
        let spin = std::time::Duration::from_millis(50);
        if read_tsc().is_some() {
            let t0 = Instant::now();
            let c0 = read_tsc().unwrap();
            while t0.elapsed() < spin {
                std::hint::spin_loop();
            }
            let c1 = read_tsc().unwrap();
            let hz = (c1 - c0) as f64 / t0.elapsed().as_secs_f64();
            Self { hz, has_tsc: true }
        } else {
            let t0 = Instant::now();
            let mut acc: u64 = 0;
            let mut iters: u64 = 0;
            while t0.elapsed() < spin {
                for _ in 0..1024 {
                    acc = std::hint::black_box(acc.wrapping_add(1));
                }
                iters += 1024;
            }
            let hz = iters as f64 / t0.elapsed().as_secs_f64();
            Self { hz, has_tsc: false }
        }
    }

    pub fn source(&self) -> &'static str {
        if self.has_tsc {
            "rdtsc"
        } else {
            "spin-calibrated"
        }
    }

    fn cycles_now(&self) -> Option<u64> {
        if self.has_tsc {
            read_tsc()
        } else {
            None
        }
    }
}

/// Outcome of timing one phase: the last run's result plus median timings.
pub struct Measurement<R> {
    pub result: R,
    pub seconds: f64,
    pub cycles: u64,
}

fn median_f64(samples: &mut [f64]) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    samples[samples.len() / 2]
}

fn median_u64(samples: &mut [u64]) -> u64 {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

/// Times `f` over `repeats` runs (plus one discarded warm-up when
/// repeats > 1) and reports median seconds and cycles.
pub fn measure<R>(clock: &Clock, repeats: usize, mut f: impl FnMut() -> R) -> Measurement<R> {
    let repeats = repeats.max(1);
    if repeats > 1 {
        std::hint::black_box(f());
    }
    let mut secs = Vec::with_capacity(repeats);
    let mut cycs = Vec::with_capacity(repeats);
    let mut result = None;
    for _ in 0..repeats {
        let c0 = clock.cycles_now();
        let t0 = Instant::now();
        let r = f();
        let dt = t0.elapsed().as_secs_f64();
        let dc = match (c0, clock.cycles_now()) {
            (Some(a), Some(b)) => b.saturating_sub(a),
            _ => (dt * clock.hz) as u64,
        };
        secs.push(dt);
        cycs.push(dc);
        result = Some(r);
    }
    Measurement {
        result: result.unwrap(),
        seconds: median_f64(&mut secs),
        cycles: median_u64(&mut cycs),
    }
}

// --- suite -----------------------------------------------------------------

struct BenchCase {
    label: String,
    message: Vec<u8>,
}

fn bench_one(
    clock: &Clock,
    params: &ProverParams,
    repeats: usize,
    cheap_repeats: usize,
    case: &BenchCase,
) -> Result<BenchRecord, BenchError> {
    let label = &case.label;
    let msg = &case.message;
    let blocks = pad_message(msg).block_count();
    eprintln!(
        "bench: case={label} bytes={} blocks={blocks} repeats={repeats}",
        msg.len()
    );

    let native = measure(clock, cheap_repeats, || digest_counted(msg));
    let (native_digest, _) = native.result;

    let gen = measure(clock, repeats, || -> Result<_, GadgetError> {
        let layout = build_sha256_circuit(blocks)?;
        let (witness, publics) = generate_witness(&layout, msg)?;
        Ok((layout, witness, publics))
    });
    let (layout, witness, publics) = gen.result?;
    let gates = layout.circuit.gate_count as u64;

    // Preprocessing is repeated inside the timed region: proof generation in
    // the reference protocol starts from the circuit, not from a cached key.
    let proved = measure(clock, repeats, || -> Result<_, BenchError> {
        let pk = setup(&layout.circuit, params)?;
        Ok(prove_consuming(&layout.circuit, &witness, &publics, pk)?)
    });
    let (proof, vd) = proved.result?;
    let proof_bytes = proof.to_bytes().len() as u64;
    let circuit_digest = vd.circuit_digest;

    let verified = measure(clock, cheap_repeats, || {
        verify(&circuit_digest, &vd, &publics, &proof)
    });
    if !verified.result {
        return Err(BenchError::VerificationFailed {
            label: label.clone(),
        });
    }
    // The hash-comparison gate: the digest carried by the proof's public
    // inputs must equal the natively computed one.
    match publics_to_digest(&publics) {
        Some((d, len)) if d == native_digest && len == msg.len() as u64 => {}
        _ => {
            return Err(BenchError::DigestMismatch {
                label: label.clone(),
            })
        }
    }

    Ok(BenchRecord {
        label: label.clone(),
        input_bytes: msg.len() as u64,
        block_count: blocks as u64,
        native_cycles: native.cycles,
        native_seconds: native.seconds,
        circuit_gen_cycles: gen.cycles,
        circuit_gen_seconds: gen.seconds,
        prove_cycles: proved.cycles,
        prove_seconds: proved.seconds,
        verify_cycles: verified.cycles,
        verify_seconds: verified.seconds,
        circuit_gates: gates,
        proof_bytes,
        repeats: repeats as u64,
        clock_hz: clock.hz,
        cycle_source: clock.source().to_string(),
        threads: 1,
    })
}

/// Runs the full suite: one record per random size, then one per fixture.
/// Every proof is re-verified and its public digest compared against the
/// native digest; any failure aborts the suite.
pub fn run_suite(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    if config.sizes.is_empty() && config.fixtures.is_empty() {
        return Err(BenchError::BadConfig("no sizes and no fixtures"));
    }
    let clock = Clock::calibrate();
    eprintln!(
        "bench: clock_hz={:.0} cycle_source={}",
        clock.hz,
        clock.source()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cases = Vec::new();
    for &size in &config.sizes {
        let mut message = vec![0u8; size as usize];
        rng.fill(&mut message[..]);
        cases.push(BenchCase {
            label: format!("random-{size}"),
            message,
        });
    }
    for fixture in &config.fixtures {
        cases.push(BenchCase {
            label: format!("block-{}", fixture.height),
            message: fixture.raw_bytes.clone(),
        });
    }

    cases
        .iter()
        .map(|case| {
            bench_one(
                &clock,
                &config.params,
                config.repeats,
                config.cheap_repeats,
                case,
            )
        })
        .collect()
}

// --- reports ---------------------------------------------------------------

/// Serialized CSV row: every record field plus derived per-byte columns.
#[derive(Serialize, Deserialize)]
struct CsvRow {
    label: String,
    input_bytes: u64,
    block_count: u64,
    native_cycles: u64,
    native_seconds: f64,
    circuit_gen_cycles: u64,
    circuit_gen_seconds: f64,
    prove_cycles: u64,
    prove_seconds: f64,
    verify_cycles: u64,
    verify_seconds: f64,
    circuit_gates: u64,
    proof_bytes: u64,
    repeats: u64,
    clock_hz: f64,
    cycle_source: String,
    threads: u64,
    native_cycles_per_byte: f64,
    prove_cycles_per_byte: f64,
}

impl CsvRow {
    fn from_record(r: &BenchRecord) -> Self {
        let per_byte = |c: u64| c as f64 / r.input_bytes.max(1) as f64;
        Self {
            label: r.label.clone(),
            input_bytes: r.input_bytes,
            block_count: r.block_count,
            native_cycles: r.native_cycles,
            native_seconds: r.native_seconds,
            circuit_gen_cycles: r.circuit_gen_cycles,
            circuit_gen_seconds: r.circuit_gen_seconds,
            prove_cycles: r.prove_cycles,
            prove_seconds: r.prove_seconds,
            verify_cycles: r.verify_cycles,
            verify_seconds: r.verify_seconds,
            circuit_gates: r.circuit_gates,
            proof_bytes: r.proof_bytes,
            repeats: r.repeats,
            clock_hz: r.clock_hz,
            cycle_source: r.cycle_source.clone(),
            threads: r.threads,
            native_cycles_per_byte: per_byte(r.native_cycles),
            prove_cycles_per_byte: per_byte(r.prove_cycles),
        }
    }

    fn into_record(self) -> BenchRecord {
        BenchRecord {
            label: self.label,
            input_bytes: self.input_bytes,
            block_count: self.block_count,
            native_cycles: self.native_cycles,
            native_seconds: self.native_seconds,
            circuit_gen_cycles: self.circuit_gen_cycles,
            circuit_gen_seconds: self.circuit_gen_seconds,
            prove_cycles: self.prove_cycles,
            prove_seconds: self.prove_seconds,
            verify_cycles: self.verify_cycles,
            verify_seconds: self.verify_seconds,
            circuit_gates: self.circuit_gates,
            proof_bytes: self.proof_bytes,
            repeats: self.repeats,
            clock_hz: self.clock_hz,
            cycle_source: self.cycle_source,
            threads: self.threads,
        }
    }
}

/// Writes records as RFC-4180 CSV: one column per record field plus derived
/// cycles-per-byte columns.
pub fn emit_csv(records: &[BenchRecord], path: &Path) -> Result<(), BenchError> {
    if records.is_empty() {
        return Err(BenchError::BadConfig("no records to emit"));
    }
    let mut w = csv::Writer::from_path(path)?;
    for r in records {
        w.serialize(CsvRow::from_record(r))?;
    }
    w.flush().map_err(std::io::Error::from)?;
    Ok(())
}

/// Reads back a CSV produced by [`emit_csv`] (derived columns are ignored).
pub fn parse_csv(path: &Path) -> Result<Vec<BenchRecord>, BenchError> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in r.deserialize::<CsvRow>() {
        out.push(row?.into_record());
    }
    Ok(out)
}

/// The twelve reported metrics, in table order.
const METRIC_ROWS: [&str; 12] = [
    "Input bytes",
    "SHA-256 blocks",
    "Native hash (cycles)",
    "Native hash (s)",
    "Circuit generation (cycles)",
    "Circuit generation (s)",
    "Proof generation (cycles)",
    "Proof generation (s)",
    "Proof verification (cycles)",
    "Proof verification (s)",
    "Circuit size (gates)",
    "Proof size (bytes)",
];

fn metric_value(r: &BenchRecord, row: usize) -> String {
    match row {
        0 => r.input_bytes.to_string(),
        1 => r.block_count.to_string(),
        2 => r.native_cycles.to_string(),
        3 => format!("{:.9}", r.native_seconds),
        4 => r.circuit_gen_cycles.to_string(),
        5 => format!("{:.4}", r.circuit_gen_seconds),
        6 => r.prove_cycles.to_string(),
        7 => format!("{:.4}", r.prove_seconds),
        8 => r.verify_cycles.to_string(),
        9 => format!("{:.6}", r.verify_seconds),
        10 => r.circuit_gates.to_string(),
        11 => r.proof_bytes.to_string(),
        _ => unreachable!(),
    }
}

/// Writes a transposed markdown table: metrics as rows, one column per input.
pub fn emit_markdown(records: &[BenchRecord], path: &Path) -> Result<(), BenchError> {
    if records.is_empty() {
        return Err(BenchError::BadConfig("no records to emit"));
    }
    let mut out = String::new();
    out.push_str("| Metric |");
    for r in records {
        out.push_str(&format!(" {} |", r.label));
    }
    out.push('\n');
    out.push_str("| --- |");
    for _ in records {
        out.push_str(" ---: |");
    }
    out.push('\n');
    for (i, name) in METRIC_ROWS.iter().enumerate() {
        out.push_str(&format!("| {name} |"));
        for r in records {
            out.push_str(&format!(" {} |", metric_value(r, i)));
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// The reference verification-time point from the original protocol's
/// largest case, overlaid on every plot: 10000 bytes, 0.0044 s.
pub const REFERENCE_OVERLAY_POINT: (f64, f64) = (10000.0, 0.0044);

/// Writes an SVG scatter/line plot of verification time against input size
/// (log-scaled x-axis) with the reference overlay point, plus a sidecar CSV
/// of the plotted points at `<path>.points.csv`.
pub fn emit_plot(records: &[BenchRecord], path: &Path) -> Result<(), BenchError> {
    if records.len() < 2 {
        return Err(BenchError::TooFewRecords(records.len()));
    }
    let mut points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.input_bytes.max(1) as f64, r.verify_seconds))
        .collect();
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let (ow, oh) = (640.0_f64, 420.0_f64);
    let (ml, mr, mt, mb) = (70.0, 20.0, 30.0, 50.0);
    let (pw, ph) = (ow - ml - mr, oh - mt - mb);

    let all_x: Vec<f64> = points
        .iter()
        .map(|p| p.0)
        .chain([REFERENCE_OVERLAY_POINT.0])
        .collect();
    let all_y: Vec<f64> = points
        .iter()
        .map(|p| p.1)
        .chain([REFERENCE_OVERLAY_POINT.1])
        .collect();
    let x_min = all_x.iter().cloned().fold(f64::INFINITY, f64::min);
    let x_max = all_x.iter().cloned().fold(0.0_f64, f64::max);
    let y_max = all_y.iter().cloned().fold(0.0_f64, f64::max) * 1.15;
    let (lx0, lx1) = (x_min.log10().floor(), x_max.log10().ceil());
    let sx = |x: f64| ml + (x.log10() - lx0) / (lx1 - lx0).max(1e-9) * pw;
    let sy = |y: f64| mt + ph - (y / y_max) * ph;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{ow}\" height=\"{oh}\" \
         viewBox=\"0 0 {ow} {oh}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">\
         Proof verification time vs input length</text>\n",
        ow / 2.0
    ));
    // axes
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>\n\
         <line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{0}\" stroke=\"black\"/>\n",
        mt + ph,
        ml + pw
    ));
    // log-decade x ticks
    let mut d = lx0 as i64;
    while d <= lx1 as i64 {
        let x = sx(10f64.powi(d as i32));
        svg.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{0}\" x2=\"{x}\" y2=\"{1}\" stroke=\"#ccc\"/>\n\
             <text x=\"{x}\" y=\"{2}\" text-anchor=\"middle\">1e{d}</text>\n",
            mt,
            mt + ph,
            mt + ph + 18.0
        ));
        d += 1;
    }
    // y ticks at quarters
    for i in 0..=4 {
        let y_val = y_max * i as f64 / 4.0;
        let y = sy(y_val);
        svg.push_str(&format!(
            "<line x1=\"{ml}\" y1=\"{y}\" x2=\"{0}\" y2=\"{y}\" stroke=\"#eee\"/>\n\
             <text x=\"{1}\" y=\"{2}\" text-anchor=\"end\">{y_val:.4}</text>\n",
            ml + pw,
            ml - 6.0,
            y + 4.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">input bytes (log scale)</text>\n",
        ml + pw / 2.0,
        oh - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">\
         verify seconds</text>\n",
        mt + ph / 2.0
    ));
    // measured polyline + points
    let poly: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\"/>\n",
        poly.join(" ")
    ));
    for &(x, y) in &points {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#1f6fb2\"/>\n",
            sx(x),
            sy(y)
        ));
    }
    // reference overlay point
    let (rx, ry) = REFERENCE_OVERLAY_POINT;
    svg.push_str(&format!(
        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\" fill=\"none\" stroke=\"#c23b22\" \
         stroke-width=\"2\"/>\n\
         <text x=\"{:.2}\" y=\"{:.2}\" fill=\"#c23b22\">reference ({rx:.0}, {ry})</text>\n",
        sx(rx),
        sy(ry),
        sx(rx) - 150.0,
        sy(ry) - 10.0
    ));
    svg.push_str("</svg>\n");
    std::fs::write(path, svg)?;

    // sidecar CSV of the plotted points, x-sorted
    let sidecar = plot_sidecar_path(path);
    let mut f = std::fs::File::create(&sidecar)?;
    writeln!(f, "input_bytes,verify_seconds")?;
    for (x, y) in &points {
        writeln!(f, "{x},{y}")?;
    }
    Ok(())
}

/// Path of the sidecar CSV written by [`emit_plot`] for a given plot path.
pub fn plot_sidecar_path(path: &Path) -> std::path::PathBuf {
    path.with_file_name(format!(
        "{}.points.csv",
        path.file_stem().and_then(|s| s.to_str()).unwrap_or("plot")
    ))
}

/// Path of the vendored reference CSV holding the original protocol's
/// published Table-1 measurements in this module's CSV schema.
pub fn reference_table1_path() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/reference_table1.csv")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_records() -> Vec<BenchRecord> {
        [(10u64, 1u64), (100, 2), (1000, 16), (10000, 157)]
            .iter()
            .map(|&(bytes, blocks)| BenchRecord {
                label: format!("random-{bytes}"),
                input_bytes: bytes,
                block_count: blocks,
                native_cycles: 196 * bytes,
                native_seconds: 4e-8 * bytes as f64,
                circuit_gen_cycles: 197_896_186 * blocks,
                circuit_gen_seconds: 0.04 * blocks as f64,
                prove_cycles: 255_670_545 * blocks,
                prove_seconds: 0.05 * blocks as f64,
                verify_cycles: 11_826_688,
                verify_seconds: 0.0028 + 0.0001 * blocks as f64,
                circuit_gates: 1419 * blocks,
                proof_bytes: 121_752 + 100 * blocks,
                repeats: 1,
                clock_hz: 4.7e9,
                cycle_source: "rdtsc".to_string(),
                threads: 1,
            })
            .collect()
    }

    #[test]
    fn clock_calibrates_to_plausible_frequency() {
        let clock = Clock::calibrate();
        assert!(clock.hz > 1e8, "clock_hz = {}", clock.hz);
        assert!(clock.hz < 1e11, "clock_hz = {}", clock.hz);
    }

    #[test]
    fn measure_noop_is_fast_and_consistent() {
        let clock = Clock::calibrate();
        let m = measure(&clock, 5, || std::hint::black_box(1 + 1));
        assert_eq!(m.result, 2);
        assert!(m.seconds < 1e-4, "no-op took {}s", m.seconds);
        // A longer phase must satisfy the cycles ~ seconds * hz invariant.
        let m = measure(&clock, 3, || {
            let mut acc = 0u64;
            for i in 0..2_000_000u64 {
                acc = std::hint::black_box(acc.wrapping_add(i));
            }
            acc
        });
        let predicted = m.seconds * clock.hz;
        let ratio = m.cycles as f64 / predicted;
        assert!(
            (0.8..1.2).contains(&ratio),
            "cycles {} vs predicted {predicted} (ratio {ratio})",
            m.cycles
        );
    }

    #[test]
    fn csv_round_trip_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bench.csv");
        let records = sample_records();
        emit_csv(&records, &path).unwrap();
        let parsed = parse_csv(&path).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn markdown_has_twelve_metric_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bench.md");
        let records = sample_records();
        emit_markdown(&records, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        // header + separator + 12 metric rows
        assert_eq!(lines.len(), 14);
        for line in &lines {
            assert_eq!(line.matches('|').count(), records.len() + 2);
        }
        assert!(text.contains("Proof size (bytes)"));
    }

    #[test]
    fn plot_contains_points_and_overlay() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plot.svg");
        let records = sample_records();
        emit_plot(&records, &path).unwrap();
        let svg = std::fs::read_to_string(&path).unwrap();
        assert_eq!(svg.matches("<circle").count(), records.len() + 1);
        assert!(svg.contains("reference (10000, 0.0044)"));
        let sidecar = std::fs::read_to_string(plot_sidecar_path(&path)).unwrap();
        let xs: Vec<f64> = sidecar
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(xs.len(), records.len());
        assert!(xs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn plot_rejects_single_record() {
        let dir = tempfile::tempdir().unwrap();
        let records = sample_records();
        assert!(matches!(
            emit_plot(&records[..1], &dir.path().join("p.svg")),
            Err(BenchError::TooFewRecords(1))
        ));
    }

    #[test]
    fn reference_csv_parses_and_renders() {
        let records = parse_csv(&reference_table1_path()).unwrap();
        assert_eq!(records.len(), 4);
        assert_eq!(
            records.iter().map(|r| r.input_bytes).collect::<Vec<_>>(),
            [10, 100, 1000, 10000]
        );
        assert_eq!(records[3].verify_seconds, 0.0044);
        assert_eq!(records[3].circuit_gates, 223_148);
        // cycles ~ seconds * clock_hz self-consistency on the timed phases
        for r in &records {
            for (c, s) in [
                (r.circuit_gen_cycles, r.circuit_gen_seconds),
                (r.prove_cycles, r.prove_seconds),
                (r.verify_cycles, r.verify_seconds),
            ] {
                let ratio = c as f64 / (s * r.clock_hz);
                assert!((0.8..1.25).contains(&ratio), "{}: ratio {ratio}", r.label);
            }
        }
        let dir = tempfile::tempdir().unwrap();
        let md = dir.path().join("table1.md");
        emit_markdown(&records, &md).unwrap();
        let text = std::fs::read_to_string(&md).unwrap();
        assert_eq!(text.lines().count(), 14);
        assert!(text.contains("223148"));
    }

    #[test]
    fn tiny_suite_end_to_end() {
        let config = BenchConfig {
            sizes: vec![3, 70],
            seed: 7,
            repeats: 1,
            cheap_repeats: 3,
            params: ProverParams {
                blowup_log: 2,
                num_queries: 8,
                ..ProverParams::default()
            },
            fixtures: Vec::new(),
        };
        let records = run_suite(&config).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].input_bytes, 3);
        assert_eq!(records[0].block_count, 1);
        assert_eq!(records[1].block_count, 2);
        assert!(records[1].circuit_gates > records[0].circuit_gates);
        // determinism: same seed => identical structural columns
        let again = run_suite(&config).unwrap();
        assert_eq!(again[0].circuit_gates, records[0].circuit_gates);
        assert_eq!(again[0].proof_bytes, records[0].proof_bytes);
        assert_eq!(again[1].proof_bytes, records[1].proof_bytes);
    }
}
