//! Choi matrices and entanglement witnesses.
//!
//! Run with `cargo run --example choi_witness`.

use ksmaps::choi::{choi_matrix, entangled_witness_state, is_entanglement_witness, witness_value};
use ksmaps::{FamilyParams, UnitalQubitMap};

fn show_spectrum(label: &str, phi: &UnitalQubitMap) {
    let w = choi_matrix(phi, false);
    let spec = w.spectrum().unwrap();
    println!(
        "{label}: spectrum {:?}, trace {:.3}",
        spec.eigenvalues
            .iter()
            .map(|v| (v * 1e5).round() / 1e5)
            .collect::<Vec<_>>(),
        w.trace()
    );
}

fn main() {
    show_spectrum("identity      ", &UnitalQubitMap::identity());
    show_spectrum("transposition ", &UnitalQubitMap::transposition());
    show_spectrum("family (1,0.6)", &FamilyParams::new(1.0, 0.6).unwrap().make_map());

    // Transposition gives SWAP: a genuine entanglement witness. The
    // extracted entangled state is the singlet with pairing -1.
    let tr = UnitalQubitMap::transposition();
    let w = choi_matrix(&tr, false);
    let rep = is_entanglement_witness(&w, &tr, 10_000, 42, 1e-8);
    println!(
        "\ntransposition witness checks: positive = {}, Choi not PSD = {}, separable floor = {:+.4e}, verdict = {}",
        rep.positivity.positive, rep.choi_not_psd, rep.separable_min_value, rep.is_witness
    );
    let detected = entangled_witness_state(&w).unwrap();
    println!(
        "detected entangled state pairs at {:+.6}",
        witness_value(&w, &detected).unwrap()
    );

    // The family map (a=1, k=0.6) has a negative Choi eigenvalue, but the
    // map itself fails positivity, so the witness construction does not
    // apply; the report carries the conflict instead of a verdict.
    let fam = FamilyParams::new(1.0, 0.6).unwrap().make_map();
    let wf = choi_matrix(&fam, false);
    let rep = is_entanglement_witness(&wf, &fam, 10_000, 42, 1e-8);
    println!(
        "\nfamily (1, 0.6): positive = {}, min Choi eigenvalue = {:.5}, verdict = {}",
        rep.positivity.positive, rep.min_choi_eigenvalue, rep.is_witness
    );
    for note in &rep.notes {
        println!("  note: {note}");
    }
}
