//! Explicit feedforward ReLU networks with two numeric backends.
//!
//! A network is an ordered list of affine layers; every layer but the last
//! applies ReLU, the last is plain affine. Weights are constructed
//! analytically by the builder modules, never trained. The `f64` backend is
//! used where decision margins dwarf float error; the rational backend is
//! mandatory for the digit-packing constructions whose intermediate values
//! span hundreds of decimal digits.
//!
//! Networks are immutable after construction and evaluation is pure, so
//! everything here is safe to share across threads.

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::{format_rat, parse_rat, rat_from_f64, rat_to_f64, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    F64,
    Rational,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::F64 => write!(f, "f64"),
            Backend::Rational => write!(f, "rat"),
        }
    }
}

#[derive(Debug, Error)]
pub enum NetError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("non-finite value produced in layer {layer}")]
    NonFinite { layer: usize },
    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(Backend, Backend),
    #[error("incompatible networks: {0}")]
    Incompatible(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot serialize non-finite weight")]
    NonFiniteWeight,
}

/// Scalar type usable as network weights.
pub trait Element: Clone + PartialOrd + Send + Sync + fmt::Debug + 'static {
    const BACKEND: Backend;
    fn zero() -> Self;
    fn one() -> Self;
    /// acc += w * x
    fn mul_acc(acc: &mut Self, w: &Self, x: &Self);
    fn is_negative(&self) -> bool;
    fn finite(&self) -> bool;
    fn write_scalar(&self) -> String;
    fn read_scalar(s: &str) -> Result<Self, String>;
}

impl Element for f64 {
    const BACKEND: Backend = Backend::F64;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn mul_acc(acc: &mut Self, w: &Self, x: &Self) {
        *acc += w * x;
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
    fn write_scalar(&self) -> String {
        // `{}` on f64 is the shortest decimal that round-trips.
        format!("{self}")
    }
    fn read_scalar(s: &str) -> Result<Self, String> {
        s.parse::<f64>().map_err(|e| e.to_string())
    }
}

impl Element for Rat {
    const BACKEND: Backend = Backend::Rational;
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as num_traits::One>::one()
    }
    fn mul_acc(acc: &mut Self, w: &Self, x: &Self) {
        *acc += w * x;
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn finite(&self) -> bool {
        true
    }
    fn write_scalar(&self) -> String {
        format_rat(self)
    }
    fn read_scalar(s: &str) -> Result<Self, String> {
        parse_rat(s)
    }
}

/// One affine layer, row-major weights of shape `rows x cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer<S> {
    pub rows: usize,
    pub cols: usize,
    pub weights: Vec<S>,
    pub bias: Vec<S>,
    pub relu: bool,
}

impl<S: Element> Layer<S> {
    pub fn new(rows: usize, cols: usize, weights: Vec<S>, bias: Vec<S>, relu: bool) -> Self {
        assert_eq!(weights.len(), rows * cols);
        assert_eq!(bias.len(), rows);
        Layer {
            rows,
            cols,
            weights,
            bias,
            relu,
        }
    }

    pub fn zeros(rows: usize, cols: usize, relu: bool) -> Self {
        Layer {
            rows,
            cols,
            weights: vec![S::zero(); rows * cols],
            bias: vec![S::zero(); rows],
            relu,
        }
    }

    pub fn w(&self, r: usize, c: usize) -> &S {
        &self.weights[r * self.cols + c]
    }

    pub fn set_w(&mut self, r: usize, c: usize, v: S) {
        self.weights[r * self.cols + c] = v;
    }

    fn apply(&self, x: &[S], out: &mut Vec<S>) {
        out.clear();
        for r in 0..self.rows {
            let mut acc = self.bias[r].clone();
            let row = &self.weights[r * self.cols..(r + 1) * self.cols];
            for (w, xv) in row.iter().zip(x.iter()) {
                S::mul_acc(&mut acc, w, xv);
            }
            if self.relu && acc.is_negative() {
                acc = S::zero();
            }
            out.push(acc);
        }
    }
}

/// A concrete-backend network: hidden layers (ReLU) followed by one affine
/// output layer.
#[derive(Debug, Clone, PartialEq)]
pub struct Net<S> {
    pub input_dim: usize,
    pub layers: Vec<Layer<S>>,
}

impl<S: Element> Net<S> {
    pub fn new(input_dim: usize, layers: Vec<Layer<S>>) -> Self {
        assert!(!layers.is_empty());
        let mut prev = input_dim;
        for l in &layers {
            assert_eq!(l.cols, prev, "adjacent layer dimensions must match");
            prev = l.rows;
        }
        assert!(
            !layers.last().unwrap().relu,
            "final layer must be affine (no activation)"
        );
        Net { input_dim, layers }
    }

    /// Single affine output layer (zero hidden layers).
    pub fn affine(input_dim: usize, weights: Vec<S>, bias: Vec<S>) -> Self {
        let rows = bias.len();
        Net::new(
            input_dim,
            vec![Layer::new(rows, input_dim, weights, bias, false)],
        )
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().unwrap().rows
    }

    pub fn hidden_count(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn eval(&self, x: &[S]) -> Result<Vec<S>, NetError> {
        if x.len() != self.input_dim {
            return Err(NetError::DimMismatch {
                expected: self.input_dim,
                got: x.len(),
            });
        }
        let mut cur = x.to_vec();
        let mut next = Vec::new();
        for (li, layer) in self.layers.iter().enumerate() {
            layer.apply(&cur, &mut next);
            if next.iter().any(|v| !v.finite()) {
                return Err(NetError::NonFinite { layer: li });
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur)
    }

    /// Post-activation sign pattern of every hidden unit; used by the
    /// piecewise-linearity tests.
    pub fn activation_pattern(&self, x: &[S]) -> Result<Vec<Vec<bool>>, NetError> {
        if x.len() != self.input_dim {
            return Err(NetError::DimMismatch {
                expected: self.input_dim,
                got: x.len(),
            });
        }
        let mut cur = x.to_vec();
        let mut next = Vec::new();
        let mut pattern = Vec::new();
        for layer in &self.layers[..self.layers.len() - 1] {
            let mut pre = Vec::with_capacity(layer.rows);
            for r in 0..layer.rows {
                let mut acc = layer.bias[r].clone();
                let row = &layer.weights[r * layer.cols..(r + 1) * layer.cols];
                for (w, xv) in row.iter().zip(cur.iter()) {
                    S::mul_acc(&mut acc, w, xv);
                }
                pre.push(acc);
            }
            pattern.push(pre.iter().map(|v| !v.is_negative()).collect());
            layer.apply(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(pattern)
    }
}

/// Identity-passthrough handling in `widen` when one net has no hidden
/// layers and its raw input must be carried through padding stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Passthrough {
    /// One ReLU node per coordinate; caller asserts the signal is >= 0.
    NonNegative,
    /// Two nodes per coordinate, ReLU(x) - ReLU(-x); valid for any signal.
    Signed,
}

fn stack_nets<S: Element>(f: &Net<S>, g: &Net<S>) -> Result<Net<S>, NetError> {
    if f.output_dim() != g.input_dim {
        return Err(NetError::DimMismatch {
            expected: g.input_dim,
            got: f.output_dim(),
        });
    }
    let f_out = f.layers.last().unwrap();
    let g_first = &g.layers[0];
    // Fuse f's final affine into g's first layer so no spurious ReLU appears.
    let mut fused: Layer<S> = Layer::zeros(g_first.rows, f_out.cols, g_first.relu);
    for r in 0..g_first.rows {
        let mut b = g_first.bias[r].clone();
        for k in 0..g_first.cols {
            let gw = g_first.w(r, k);
            S::mul_acc(&mut b, gw, &f_out.bias[k]);
            for c in 0..f_out.cols {
                let mut acc = fused.w(r, c).clone();
                S::mul_acc(&mut acc, gw, f_out.w(k, c));
                fused.set_w(r, c, acc);
            }
        }
        fused.bias[r] = b;
    }
    let mut layers = Vec::with_capacity(f.layers.len() + g.layers.len() - 1);
    layers.extend_from_slice(&f.layers[..f.layers.len() - 1]);
    layers.push(fused);
    layers.extend_from_slice(&g.layers[1..]);
    Ok(Net::new(f.input_dim, layers))
}

/// Pads `net` to exactly `target_hidden` hidden layers by inserting identity
/// stages before the output layer, then returns the padded layer list.
fn pad_hidden<S: Element>(net: &Net<S>, target_hidden: usize, pad: Passthrough) -> Vec<Layer<S>> {
    let have = net.hidden_count();
    assert!(target_hidden >= have);
    if target_hidden == have {
        return net.layers.clone();
    }
    let extra = target_hidden - have;
    let signal_dim = if have == 0 {
        net.input_dim
    } else {
        net.layers[have - 1].rows
    };
    // Hidden signals are post-ReLU and always non-negative; only a raw input
    // signal may need the signed two-node carry.
    let mode = if have == 0 { pad } else { Passthrough::NonNegative };
    let (enc_rows, decode): (usize, Vec<Vec<S>>) = match mode {
        Passthrough::NonNegative => {
            let mut d = vec![vec![S::zero(); signal_dim]; signal_dim];
            for (i, row) in d.iter_mut().enumerate() {
                row[i] = S::one();
            }
            (signal_dim, d)
        }
        Passthrough::Signed => {
            // decode = [I, -I]
            let mut d = vec![vec![S::zero(); 2 * signal_dim]; signal_dim];
            for (i, row) in d.iter_mut().enumerate() {
                row[i] = S::one();
                row[signal_dim + i] = neg_one::<S>();
            }
            (2 * signal_dim, d)
        }
    };
    // Encoder from the signal: rows = enc_rows.
    let mut enc = Layer::zeros(enc_rows, signal_dim, true);
    for i in 0..signal_dim {
        enc.set_w(i, i, S::one());
        if enc_rows == 2 * signal_dim {
            enc.set_w(signal_dim + i, i, neg_one::<S>());
        }
    }
    // Mid stage: encode(decode(prev)).
    let mut mid = Layer::zeros(enc_rows, enc_rows, true);
    for r in 0..enc_rows {
        for c in 0..enc_rows {
            let mut acc = S::zero();
            for (k, drow) in decode.iter().enumerate() {
                S::mul_acc(&mut acc, enc.w(r, k), &drow[c]);
            }
            mid.set_w(r, c, acc);
        }
    }
    let out = net.layers.last().unwrap();
    let mut new_out = Layer::zeros(out.rows, enc_rows, out.relu);
    for r in 0..out.rows {
        new_out.bias[r] = out.bias[r].clone();
        for c in 0..enc_rows {
            let mut acc = S::zero();
            for (k, drow) in decode.iter().enumerate() {
                S::mul_acc(&mut acc, out.w(r, k), &drow[c]);
            }
            new_out.set_w(r, c, acc);
        }
    }
    let mut layers: Vec<Layer<S>> = net.layers[..have].to_vec();
    layers.push(enc);
    for _ in 1..extra {
        layers.push(mid.clone());
    }
    layers.push(new_out);
    layers
}

fn neg_one<S: Element>() -> S {
    S::read_scalar("-1").expect("backend must parse -1")
}

fn widen_nets<S: Element>(
    f: &Net<S>,
    g: &Net<S>,
    pad: Passthrough,
) -> Result<Net<S>, NetError> {
    if f.input_dim != g.input_dim {
        return Err(NetError::DimMismatch {
            expected: f.input_dim,
            got: g.input_dim,
        });
    }
    let hidden = f.hidden_count().max(g.hidden_count());
    let fl = pad_hidden(f, hidden, pad);
    let gl = pad_hidden(g, hidden, pad);
    let mut layers = Vec::with_capacity(hidden + 1);
    for i in 0..=hidden {
        let (a, b) = (&fl[i], &gl[i]);
        let rows = a.rows + b.rows;
        let shared_input = i == 0;
        let cols = if shared_input { f.input_dim } else { a.cols + b.cols };
        let mut l = Layer::zeros(rows, cols, a.relu);
        for r in 0..a.rows {
            l.bias[r] = a.bias[r].clone();
            for c in 0..a.cols {
                l.set_w(r, c, a.w(r, c).clone());
            }
        }
        let coff = if shared_input { 0 } else { a.cols };
        for r in 0..b.rows {
            l.bias[a.rows + r] = b.bias[r].clone();
            for c in 0..b.cols {
                l.set_w(a.rows + r, coff + c, b.w(r, c).clone());
            }
        }
        layers.push(l);
    }
    Ok(Net::new(f.input_dim, layers))
}

/// Width, depth, and parameter count. `params` follows the convention
/// sum over layers of in_dim * (out_dim + 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetMetrics {
    pub width: usize,
    pub depth: usize,
    pub params: usize,
}

fn metrics_of<S: Element>(net: &Net<S>) -> NetMetrics {
    let hidden = net.hidden_count();
    let width = net.layers[..hidden].iter().map(|l| l.rows).max().unwrap_or(0);
    let params = net.layers.iter().map(|l| l.cols * (l.rows + 1)).sum();
    NetMetrics {
        width,
        depth: net.layers.len(),
        params,
    }
}

/// A ReLU network with its backend chosen at construction.
#[derive(Debug, Clone, PartialEq)]
pub enum ReluNetwork {
    F64(Net<f64>),
    Rational(Net<Rat>),
}

impl ReluNetwork {
    pub fn backend(&self) -> Backend {
        match self {
            ReluNetwork::F64(_) => Backend::F64,
            ReluNetwork::Rational(_) => Backend::Rational,
        }
    }

    pub fn input_dim(&self) -> usize {
        match self {
            ReluNetwork::F64(n) => n.input_dim,
            ReluNetwork::Rational(n) => n.input_dim,
        }
    }

    pub fn output_dim(&self) -> usize {
        match self {
            ReluNetwork::F64(n) => n.output_dim(),
            ReluNetwork::Rational(n) => n.output_dim(),
        }
    }

    pub fn metrics(&self) -> NetMetrics {
        match self {
            ReluNetwork::F64(n) => metrics_of(n),
            ReluNetwork::Rational(n) => metrics_of(n),
        }
    }

    /// Evaluates on float input. The rational backend lifts the input
    /// exactly, computes exactly, and rounds only the final output.
    pub fn evaluate_f64(&self, x: &[f64]) -> Result<Vec<f64>, NetError> {
        match self {
            ReluNetwork::F64(n) => n.eval(x),
            ReluNetwork::Rational(n) => {
                let xr = lift_f64(x)?;
                Ok(n.eval(&xr)?.iter().map(rat_to_f64).collect())
            }
        }
    }

    /// Exact evaluation on rational input. A float-backend net lifts its own
    /// (dyadic) weights exactly.
    pub fn evaluate_exact(&self, x: &[Rat]) -> Result<Vec<Rat>, NetError> {
        match self {
            ReluNetwork::Rational(n) => n.eval(x),
            ReluNetwork::F64(n) => lift_net(n).eval(x),
        }
    }

    /// sign(F(x)) with the declared convention sign(0) = +1.
    pub fn sign_at(&self, x: &[f64]) -> Result<i8, NetError> {
        match self {
            ReluNetwork::F64(n) => {
                let out = n.eval(x)?;
                Ok(if out[0] < 0.0 { -1 } else { 1 })
            }
            ReluNetwork::Rational(n) => {
                let xr = lift_f64(x)?;
                let out = n.eval(&xr)?;
                Ok(if Signed::is_negative(&out[0]) { -1 } else { 1 })
            }
        }
    }

    /// Exact sign on exact input.
    pub fn sign_at_exact(&self, x: &[Rat]) -> Result<i8, NetError> {
        let out = self.evaluate_exact(x)?;
        Ok(if Signed::is_negative(&out[0]) { -1 } else { 1 })
    }

    /// Parallel batch of `sign_at`.
    pub fn sign_batch(&self, xs: &[Vec<f64>]) -> Result<Vec<i8>, NetError> {
        xs.par_iter().map(|x| self.sign_at(x)).collect()
    }

    /// Composition: evaluate(stack(f,g), x) = evaluate(g, evaluate(f, x)).
    pub fn stack(&self, g: &ReluNetwork) -> Result<ReluNetwork, NetError> {
        match (self, g) {
            (ReluNetwork::F64(a), ReluNetwork::F64(b)) => Ok(ReluNetwork::F64(stack_nets(a, b)?)),
            (ReluNetwork::Rational(a), ReluNetwork::Rational(b)) => {
                Ok(ReluNetwork::Rational(stack_nets(a, b)?))
            }
            _ => Err(NetError::BackendMismatch(self.backend(), g.backend())),
        }
    }

    /// Parallel concatenation: output is (f(x), g(x)).
    pub fn widen(&self, g: &ReluNetwork, pad: Passthrough) -> Result<ReluNetwork, NetError> {
        match (self, g) {
            (ReluNetwork::F64(a), ReluNetwork::F64(b)) => {
                Ok(ReluNetwork::F64(widen_nets(a, b, pad)?))
            }
            (ReluNetwork::Rational(a), ReluNetwork::Rational(b)) => {
                Ok(ReluNetwork::Rational(widen_nets(a, b, pad)?))
            }
            _ => Err(NetError::BackendMismatch(self.backend(), g.backend())),
        }
    }

    pub fn serialize(&self) -> Result<String, NetError> {
        fn write_net<S: Element>(net: &Net<S>) -> Result<String, NetError> {
            let mut out = String::new();
            out.push_str(&format!(
                "RELUNET v1 backend={} input={} layers={}\n",
                S::BACKEND,
                net.input_dim,
                net.layers.len()
            ));
            for l in &net.layers {
                out.push_str(&format!(
                    "LAYER {} {} act={}\n",
                    l.rows,
                    l.cols,
                    if l.relu { "relu" } else { "none" }
                ));
                for r in 0..l.rows {
                    let mut line = String::new();
                    for c in 0..l.cols {
                        if !l.w(r, c).finite() {
                            return Err(NetError::NonFiniteWeight);
                        }
                        line.push_str(&l.w(r, c).write_scalar());
                        line.push(' ');
                    }
                    if !l.bias[r].finite() {
                        return Err(NetError::NonFiniteWeight);
                    }
                    line.push_str(&l.bias[r].write_scalar());
                    line.push('\n');
                    out.push_str(&line);
                }
            }
            Ok(out)
        }
        match self {
            ReluNetwork::F64(n) => write_net(n),
            ReluNetwork::Rational(n) => write_net(n),
        }
    }

    pub fn deserialize(text: &str) -> Result<ReluNetwork, NetError> {
        let mut lines = text.lines().enumerate();
        let (ln, header) = lines
            .next()
            .ok_or(NetError::Parse {
                line: 1,
                msg: "empty input".into(),
            })?;
        let perr = |line: usize, msg: &str| NetError::Parse {
            line: line + 1,
            msg: msg.to_string(),
        };
        let mut backend = None;
        let mut input = None;
        let mut layer_count = None;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("RELUNET") || parts.next() != Some("v1") {
            return Err(perr(ln, "expected `RELUNET v1` header"));
        }
        for p in parts {
            if let Some(v) = p.strip_prefix("backend=") {
                backend = Some(match v {
                    "f64" => Backend::F64,
                    "rat" => Backend::Rational,
                    _ => return Err(perr(ln, "backend must be f64 or rat")),
                });
            } else if let Some(v) = p.strip_prefix("input=") {
                input = Some(v.parse::<usize>().map_err(|_| perr(ln, "bad input="))?);
            } else if let Some(v) = p.strip_prefix("layers=") {
                layer_count = Some(v.parse::<usize>().map_err(|_| perr(ln, "bad layers="))?);
            } else {
                return Err(perr(ln, "unknown header field"));
            }
        }
        let backend = backend.ok_or(perr(ln, "missing backend="))?;
        let input = input.ok_or(perr(ln, "missing input="))?;
        let layer_count = layer_count.ok_or(perr(ln, "missing layers="))?;
        if layer_count == 0 {
            return Err(perr(ln, "layers must be >= 1"));
        }

        fn read_net<S: Element>(
            input: usize,
            layer_count: usize,
            lines: &mut std::iter::Enumerate<std::str::Lines<'_>>,
        ) -> Result<Net<S>, NetError> {
            let perr = |line: usize, msg: String| NetError::Parse {
                line: line + 1,
                msg,
            };
            let mut layers = Vec::with_capacity(layer_count);
            let mut prev = input;
            for li in 0..layer_count {
                let (ln, lh) = lines
                    .next()
                    .ok_or_else(|| perr(usize::MAX - 1, format!("truncated: missing layer {li}")))?;
                let mut p = lh.split_whitespace();
                if p.next() != Some("LAYER") {
                    return Err(perr(ln, "expected LAYER".into()));
                }
                let rows: usize = p
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| perr(ln, "bad LAYER rows".into()))?;
                let cols: usize = p
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| perr(ln, "bad LAYER cols".into()))?;
                let relu = match p.next() {
                    Some("act=relu") => true,
                    Some("act=none") => false,
                    _ => return Err(perr(ln, "expected act=relu|none".into())),
                };
                if cols != prev {
                    return Err(perr(ln, format!("layer expects {prev} inputs, has {cols}")));
                }
                if rows == 0 {
                    return Err(perr(ln, "layer with zero rows".into()));
                }
                let mut weights = Vec::with_capacity(rows * cols);
                let mut bias = Vec::with_capacity(rows);
                for r in 0..rows {
                    let (ln, row) = lines
                        .next()
                        .ok_or_else(|| perr(usize::MAX - 1, format!("truncated in layer {li} row {r}")))?;
                    let vals: Vec<&str> = row.split_whitespace().collect();
                    if vals.len() != cols + 1 {
                        return Err(perr(
                            ln,
                            format!("expected {} scalars, got {}", cols + 1, vals.len()),
                        ));
                    }
                    for v in &vals[..cols] {
                        weights.push(S::read_scalar(v).map_err(|e| perr(ln, e))?);
                    }
                    bias.push(S::read_scalar(vals[cols]).map_err(|e| perr(ln, e))?);
                }
                layers.push(Layer::new(rows, cols, weights, bias, relu));
                prev = rows;
            }
            if layers.last().unwrap().relu {
                return Err(perr(0, "final layer must have act=none".into()));
            }
            for (ln, rest) in lines {
                if !rest.trim().is_empty() {
                    return Err(perr(ln, "trailing content after last layer".into()));
                }
            }
            Ok(Net::new(input, layers))
        }

        match backend {
            Backend::F64 => Ok(ReluNetwork::F64(read_net(input, layer_count, &mut lines)?)),
            Backend::Rational => Ok(ReluNetwork::Rational(read_net(
                input,
                layer_count,
                &mut lines,
            )?)),
        }
    }
}

pub fn lift_f64(x: &[f64]) -> Result<Vec<Rat>, NetError> {
    x.iter()
        .map(|v| rat_from_f64(*v).ok_or(NetError::NonFinite { layer: 0 }))
        .collect()
}

fn lift_net(n: &Net<f64>) -> Net<Rat> {
    let layers = n
        .layers
        .iter()
        .map(|l| {
            Layer::new(
                l.rows,
                l.cols,
                l.weights.iter().map(|w| rat_from_f64(*w).unwrap()).collect(),
                l.bias.iter().map(|b| rat_from_f64(*b).unwrap()).collect(),
                l.relu,
            )
        })
        .collect();
    Net::new(n.input_dim, layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn identity_1d() -> ReluNetwork {
        // one hidden layer W=[1], b=0, output W=[1], b=0
        ReluNetwork::F64(Net::new(
            1,
            vec![
                Layer::new(1, 1, vec![1.0], vec![0.0], true),
                Layer::new(1, 1, vec![1.0], vec![0.0], false),
            ],
        ))
    }

    #[test]
    fn identity_evaluates() {
        let n = identity_1d();
        assert_eq!(n.evaluate_f64(&[0.7]).unwrap(), vec![0.7]);
    }

    #[test]
    fn dead_relu_evaluates_to_zero() {
        let n = ReluNetwork::F64(Net::new(
            1,
            vec![
                Layer::new(1, 1, vec![-1.0], vec![0.49], true),
                Layer::new(1, 1, vec![1.0], vec![0.0], false),
            ],
        ));
        assert_eq!(n.evaluate_f64(&[1.0]).unwrap(), vec![0.0]);
    }

    #[test]
    fn identity_metrics() {
        let m = identity_1d().metrics();
        assert_eq!((m.width, m.depth, m.params), (1, 2, 4));
    }

    #[test]
    fn stack_equals_sequential() {
        let f = identity_1d();
        let g = identity_1d();
        let s = f.stack(&g).unwrap();
        for i in 0..100 {
            let x = (i as f64) / 99.0;
            assert_eq!(
                s.evaluate_f64(&[x]).unwrap()[0],
                g.evaluate_f64(&f.evaluate_f64(&[x]).unwrap()).unwrap()[0]
            );
        }
    }

    #[test]
    fn stack_param_bound() {
        let f = identity_1d();
        let g = identity_1d();
        let s = f.stack(&g).unwrap();
        let (mf, mg, ms) = (f.metrics(), g.metrics(), s.metrics());
        assert!(ms.params <= mf.params + mg.params + 1 * 1);
    }

    #[test]
    fn widen_concatenates() {
        let f = identity_1d();
        let w = f.widen(&f, Passthrough::NonNegative).unwrap();
        assert_eq!(w.evaluate_f64(&[0.3]).unwrap(), vec![0.3, 0.3]);
        assert_eq!(w.metrics().width, 2);
    }

    #[test]
    fn widen_pads_depth_with_signed_passthrough() {
        let f = identity_1d(); // 1 hidden layer
        let aff = ReluNetwork::F64(Net::affine(1, vec![2.0], vec![-0.5])); // 0 hidden
        let w = aff.widen(&f, Passthrough::Signed).unwrap();
        for x in [-0.9, -0.2, 0.0, 0.4, 1.3] {
            let out = w.evaluate_f64(&[x]).unwrap();
            assert!((out[0] - (2.0 * x - 0.5)).abs() < 1e-12, "x={x} out={out:?}");
            assert!((out[1] - x.max(0.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn serialize_roundtrip_f64() {
        let n = identity_1d();
        let text = n.serialize().unwrap();
        let back = ReluNetwork::deserialize(&text).unwrap();
        assert_eq!(back.metrics(), n.metrics());
        assert_eq!(back.evaluate_f64(&[0.25]).unwrap(), vec![0.25]);
    }

    #[test]
    fn serialize_roundtrip_rational_exact() {
        let n = ReluNetwork::Rational(Net::new(
            1,
            vec![
                Layer::new(
                    2,
                    1,
                    vec![rat_int(3), crate::scalar::rat_ratio(-1, 7)],
                    vec![rat_int(0), crate::scalar::rat_ratio(22, 7)],
                    true,
                ),
                Layer::new(1, 2, vec![rat_int(1), rat_int(1)], vec![rat_int(0)], false),
            ],
        ));
        let back = ReluNetwork::deserialize(&n.serialize().unwrap()).unwrap();
        assert_eq!(back, n);
    }

    #[test]
    fn truncated_file_is_parse_error() {
        let text = identity_1d().serialize().unwrap();
        let cut = &text[..text.len() - 4];
        assert!(matches!(
            ReluNetwork::deserialize(cut),
            Err(NetError::Parse { .. })
        ));
    }
}
