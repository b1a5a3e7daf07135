//! JSON schemas for sampled points and weight sets: rationals as `p/q`
//! strings, complex numbers as `[re, im]` pairs, matrices as nested arrays.

use num_complex::Complex;
use serde_json::{json, Value};

use nineteen_vertex_core::matrix::DenseMatrix;
use nineteen_vertex_core::weights::{WeightSet, WEIGHT_NAMES};
use nineteen_vertex_core::Rat;

pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

pub fn complex_pair(z: &Complex<f64>) -> Value {
    json!([z.re, z.im])
}

pub fn rat_coords(coords: &[Rat]) -> Value {
    Value::Array(coords.iter().map(|c| Value::String(rat_str(c))).collect())
}

pub fn weights_json(w: &WeightSet<Rat>) -> Value {
    let values = w.to_vec();
    let map: serde_json::Map<String, Value> = WEIGHT_NAMES
        .iter()
        .zip(values.iter())
        .map(|(name, v)| (name.to_string(), Value::String(rat_str(v))))
        .collect();
    Value::Object(map)
}

/// Nested-array form of a matrix; exact entries as `p/q` strings.
pub fn rat_matrix_json(m: &DenseMatrix<Rat>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| Value::String(rat_str(m.get(r, c))))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Nested-array form of a complex matrix; entries as `[re, im]`.
pub fn c64_matrix_json(m: &DenseMatrix<Complex<f64>>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| complex_pair(m.get(r, c))).collect()))
            .collect(),
    )
}

/// Converts an exact rational to the float backend.
pub fn rat_to_c64(r: &Rat) -> Complex<f64> {
    use num_traits::ToPrimitive;
    Complex::new(r.to_f64().expect("rational fits in f64"), 0.0)
}
