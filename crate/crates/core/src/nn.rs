//! Dense layers, softmax/cross-entropy, Adam and classification metrics.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const NUM_CLASSES: usize = 10;

/// Lower clamp applied to probabilities before taking the log.
pub const LOG_CLAMP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Identity,
    Relu,
    Softmax,
}

/// Fully connected layer, `activation(W·x + b)` with `W` stored row-major
/// as `outputs × inputs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseLayer {
    pub inputs: usize,
    pub outputs: usize,
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
    pub activation: Activation,
}

/// Values kept from a forward pass for the backward pass.
#[derive(Clone, Debug)]
pub struct DenseCache {
    pub input: Vec<f64>,
    pub pre_activation: Vec<f64>,
    pub output: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseGrads {
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
    pub input: Vec<f64>,
}

impl DenseLayer {
    pub fn zeros(inputs: usize, outputs: usize, activation: Activation) -> Self {
        Self {
            inputs,
            outputs,
            weights: vec![0.0; inputs * outputs],
            biases: vec![0.0; outputs],
            activation,
        }
    }

    /// Weights uniform on `±√(6 / (fan_in + fan_out))`, zero biases.
    pub fn glorot_uniform<R: Rng>(inputs: usize, outputs: usize, activation: Activation, rng: &mut R) -> Self {
        let limit = (6.0 / (inputs + outputs) as f64).sqrt();
        let mut layer = Self::zeros(inputs, outputs, activation);
        for w in layer.weights.iter_mut() {
            *w = rng.random_range(-limit..limit);
        }
        layer
    }

    pub fn param_count(&self) -> usize {
        self.weights.len() + self.biases.len()
    }

    pub fn forward(&self, input: &[f64]) -> Result<DenseCache> {
        if input.len() != self.inputs {
            return Err(Error::Parameter(format!(
                "dense layer expects {} inputs, got {}",
                self.inputs,
                input.len()
            )));
        }
        let pre: Vec<f64> = self
            .weights
            .chunks_exact(self.inputs)
            .zip(&self.biases)
            .map(|(row, b)| row.iter().zip(input).map(|(w, x)| w * x).sum::<f64>() + b)
            .collect();
        let output = match self.activation {
            Activation::Identity => pre.clone(),
            Activation::Relu => pre.iter().map(|&v| v.max(0.0)).collect(),
            Activation::Softmax => softmax(&pre),
        };
        Ok(DenseCache {
            input: input.to_vec(),
            pre_activation: pre,
            output,
        })
    }

    /// Backpropagates `∂L/∂output` through the activation and the affine map.
    pub fn backward(&self, cache: &DenseCache, grad_output: &[f64]) -> Result<DenseGrads> {
        if grad_output.len() != self.outputs {
            return Err(Error::Parameter(format!(
                "upstream gradient has {} entries, layer has {} outputs",
                grad_output.len(),
                self.outputs
            )));
        }
        let grad_pre: Vec<f64> = match self.activation {
            Activation::Identity => grad_output.to_vec(),
            Activation::Relu => cache
                .pre_activation
                .iter()
                .zip(grad_output)
                .map(|(&z, &g)| if z > 0.0 { g } else { 0.0 })
                .collect(),
            Activation::Softmax => {
                let p = &cache.output;
                let dot: f64 = p.iter().zip(grad_output).map(|(p, g)| p * g).sum();
                p.iter().zip(grad_output).map(|(p, g)| p * (g - dot)).collect()
            }
        };
        self.backward_pre_activation(cache, &grad_pre)
    }

    /// Backpropagates `∂L/∂(W·x + b)`. Used directly for the fused
    /// softmax + cross-entropy gradient `p − Y`.
    pub fn backward_pre_activation(&self, cache: &DenseCache, grad_pre: &[f64]) -> Result<DenseGrads> {
        if grad_pre.len() != self.outputs || cache.input.len() != self.inputs {
            return Err(Error::Parameter("cache or gradient does not match layer shape".into()));
        }
        let mut weights = vec![0.0; self.weights.len()];
        for (row, &g) in weights.chunks_exact_mut(self.inputs).zip(grad_pre) {
            for (w, &x) in row.iter_mut().zip(&cache.input) {
                *w = g * x;
            }
        }
        let mut input = vec![0.0; self.inputs];
        for (row, &g) in self.weights.chunks_exact(self.inputs).zip(grad_pre) {
            for (d, &w) in input.iter_mut().zip(row) {
                *d += g * w;
            }
        }
        Ok(DenseGrads {
            weights,
            biases: grad_pre.to_vec(),
            input,
        })
    }

    pub fn write_flat(&self, out: &mut Vec<f64>) {
        out.extend_from_slice(&self.weights);
        out.extend_from_slice(&self.biases);
    }

    /// Reads weights then biases from the front of `flat`, returning the rest.
    pub fn read_flat<'a>(&mut self, flat: &'a [f64]) -> Result<&'a [f64]> {
        let n = self.param_count();
        if flat.len() < n {
            return Err(Error::Parameter("flat parameter vector too short".into()));
        }
        let (w, rest) = flat.split_at(self.weights.len());
        self.weights.copy_from_slice(w);
        let (b, rest) = rest.split_at(self.biases.len());
        self.biases.copy_from_slice(b);
        Ok(rest)
    }
}

/// Numerically stable softmax.
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&v| (v - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// A one-hot class vector over the ten classes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneHotLabel {
    class: u8,
}

impl OneHotLabel {
    /// `class` is 1-based.
    pub fn new(class: u8) -> Result<Self> {
        if !(1..=NUM_CLASSES as u8).contains(&class) {
            return Err(Error::Argument(format!("class {class} not in 1..=10")));
        }
        Ok(Self { class })
    }

    pub fn class(&self) -> u8 {
        self.class
    }

    pub fn index(&self) -> usize {
        self.class as usize - 1
    }

    pub fn to_vec(&self) -> [f64; NUM_CLASSES] {
        let mut y = [0.0; NUM_CLASSES];
        y[self.index()] = 1.0;
        y
    }
}

fn check_distribution(predicted: &[f64]) -> Result<()> {
    if predicted.len() != NUM_CLASSES {
        return Err(Error::Probability(format!(
            "expected 10 probabilities, got {}",
            predicted.len()
        )));
    }
    let sum: f64 = predicted.iter().sum();
    let normalized = (sum - 1.0).abs() <= 1e-6;
    if !normalized || predicted.iter().any(|&p| p < 0.0) {
        return Err(Error::Probability(format!("probabilities sum to {sum}")));
    }
    Ok(())
}

/// `−Σ_c Y_c · log(max(Ŷ_c, 1e-12))` for one example.
pub fn cce_loss(predicted: &[f64], truth: OneHotLabel) -> Result<f64> {
    check_distribution(predicted)?;
    Ok(-predicted[truth.index()].clamp(LOG_CLAMP, 1.0).ln())
}

/// Mean cross-entropy over a batch.
pub fn cce_batch(predicted: &[Vec<f64>], truths: &[OneHotLabel]) -> Result<f64> {
    if predicted.len() != truths.len() || predicted.is_empty() {
        return Err(Error::Argument(format!(
            "batch of {} predictions and {} labels",
            predicted.len(),
            truths.len()
        )));
    }
    let mut total = 0.0;
    for (p, &t) in predicted.iter().zip(truths) {
        total += cce_loss(p, t)?;
    }
    Ok(total / predicted.len() as f64)
}

/// `∂CCE/∂logits` for a softmax output: `p − Y`.
pub fn softmax_cce_grad(probabilities: &[f64], truth: OneHotLabel) -> Vec<f64> {
    let mut g = probabilities.to_vec();
    g[truth.index()] -= 1.0;
    g
}

/// 1-based index of the largest entry; ties go to the lowest index.
pub fn argmax_predict(predicted: &[f64]) -> u8 {
    let mut best = 0;
    for (i, &v) in predicted.iter().enumerate() {
        if v > predicted[best] {
            best = i;
        }
    }
    best as u8 + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.001,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-7,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdamState {
    pub config: AdamConfig,
    pub step: u64,
    pub m: Vec<f64>,
    pub v: Vec<f64>,
}

impl AdamState {
    pub fn new(config: AdamConfig, n_params: usize) -> Self {
        Self {
            config,
            step: 0,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
        }
    }
}

/// One Adam update with bias correction.
///
/// The correction is folded into the step size,
/// `θ ← θ − lr·√(1−β₂ᵗ)/(1−β₁ᵗ) · m / (√v + ε)`, so ε acts on the
/// uncorrected second moment.
pub fn adam_step(params: &mut [f64], grads: &[f64], state: &mut AdamState) -> Result<()> {
    if params.len() != grads.len() || params.len() != state.m.len() {
        return Err(Error::Parameter(format!(
            "adam: {} params, {} grads, {} moments",
            params.len(),
            grads.len(),
            state.m.len()
        )));
    }
    let AdamConfig {
        learning_rate,
        beta1,
        beta2,
        epsilon,
    } = state.config;
    state.step += 1;
    let t = state.step as i32;
    let step_size = learning_rate * (1.0 - beta2.powi(t)).sqrt() / (1.0 - beta1.powi(t));
    for (((p, &g), m), v) in params.iter_mut().zip(grads).zip(&mut state.m).zip(&mut state.v) {
        *m = beta1 * *m + (1.0 - beta1) * g;
        *v = beta2 * *v + (1.0 - beta2) * g * g;
        *p -= step_size * *m / (v.sqrt() + epsilon);
    }
    Ok(())
}

/// Fraction of exact matches.
pub fn accuracy(preds: &[u8], truths: &[u8]) -> Result<f64> {
    if preds.len() != truths.len() || preds.is_empty() {
        return Err(Error::Metric(format!(
            "{} predictions vs {} truths",
            preds.len(),
            truths.len()
        )));
    }
    let hits = preds.iter().zip(truths).filter(|(p, t)| p == t).count();
    Ok(hits as f64 / preds.len() as f64)
}

/// Mean per-class recall over the ten classes.
pub fn balanced_accuracy(preds: &[u8], truths: &[u8]) -> Result<f64> {
    balanced_accuracy_over(preds, truths, NUM_CLASSES)
}

/// Mean over classes `1..=n_classes` of (correct in class / class count).
/// Every class must occur in `truths`.
pub fn balanced_accuracy_over(preds: &[u8], truths: &[u8], n_classes: usize) -> Result<f64> {
    if preds.len() != truths.len() {
        return Err(Error::Metric(format!(
            "{} predictions vs {} truths",
            preds.len(),
            truths.len()
        )));
    }
    let mut hits = vec![0usize; n_classes];
    let mut counts = vec![0usize; n_classes];
    for (&p, &t) in preds.iter().zip(truths) {
        let c = t as usize;
        if c == 0 || c > n_classes {
            return Err(Error::Metric(format!("class {t} outside 1..={n_classes}")));
        }
        counts[c - 1] += 1;
        if p == t {
            hits[c - 1] += 1;
        }
    }
    if let Some(missing) = counts.iter().position(|&n| n == 0) {
        return Err(Error::Metric(format!("class {} has no examples", missing + 1)));
    }
    let total: f64 = hits.iter().zip(&counts).map(|(&h, &n)| h as f64 / n as f64).sum();
    Ok(total / n_classes as f64)
}
