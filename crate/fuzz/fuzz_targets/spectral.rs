#![no_main]

use libfuzzer_sys::fuzz_target;
use opmeans::{jordan_inverse, matrix_power, spectral_decompose, weighted_geometric, HermitianMatrix};

// Layout: one byte of dimension (1..=6), one byte selecting the exponent,
// then little-endian f64 entries of the upper triangle.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let Some((&sel, rest)) = rest.split_first() else {
        return;
    };
    let n = (head as usize % 6) + 1;
    let values: Vec<f64> = rest
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if values.len() < n * (n + 1) / 2 {
        return;
    }
    let mut entries = vec![0.0; n * n];
    let mut it = values.iter();
    for i in 0..n {
        for j in i..n {
            let v = *it.next().unwrap();
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    let Ok(a) = HermitianMatrix::from_row_major(n, &entries) else {
        return;
    };
    if let Ok(spec) = spectral_decompose(&a) {
        assert!(spec.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }
    let t = [-1.0, -0.5, 0.5, 1.5, 2.0, 3.0][sel as usize % 6];
    let _ = matrix_power(&a, t);
    let _ = jordan_inverse(&a);
    let _ = weighted_geometric(&a, &HermitianMatrix::identity(n), t.clamp(-0.75, 1.75));
});
