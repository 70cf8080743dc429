//! Times each pipeline stage for one message size.
//!
//! Usage: cargo run --release --example prove_timing -- [BYTES] [BLOWUP_LOG] [QUERIES]

use std::time::Instant;

use zksha256::proof::{prove_consuming, setup, verify, ProverParams};
use zksha256::sha256::gadget::{build_sha256_circuit, generate_witness};
use zksha256::sha256::pad_message;

fn main() {
    let mut args = std::env::args().skip(1);
    let size: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10000);
    let blowup_log: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let num_queries: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(32);

    let message = vec![0x5au8; size];
    let blocks = pad_message(&message).block_count();

    let t = Instant::now();
    let layout = build_sha256_circuit(blocks).unwrap();
    println!(
        "build:   {:>8.2?}  blocks={blocks} gates={} n={}",
        t.elapsed(),
        layout.circuit.gate_count,
        layout.circuit.n
    );

    let t = Instant::now();
    let (witness, publics) = generate_witness(&layout, &message).unwrap();
    println!("witness: {:>8.2?}", t.elapsed());

    let params = ProverParams {
        blowup_log,
        num_queries,
        ..ProverParams::default()
    };
    let t = Instant::now();
    let pk = setup(&layout.circuit, &params).unwrap();
    println!("setup:   {:>8.2?}", t.elapsed());

    let t = Instant::now();
    let (proof, vd) = prove_consuming(&layout.circuit, &witness, &publics, pk).unwrap();
    println!(
        "prove:   {:>8.2?}  proof_bytes={}",
        t.elapsed(),
        proof.to_bytes().len()
    );

    let t = Instant::now();
    let ok = verify(&vd.circuit_digest, &vd, &publics, &proof);
    println!("verify:  {:>8.2?}  ok={ok}", t.elapsed());
    assert!(ok);
}
