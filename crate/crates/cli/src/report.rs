use serde::Serialize;

/// One line of `bench --json` output. The shape is described by
/// `docs/bench_report.schema.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub algorithm: String,
    pub n: u32,
    pub input: String,
    pub ops: u64,
    /// `xor`, `list_mod` or `emitted_term`.
    pub unit: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ns: Option<u64>,
    /// Present exactly when the oracle ran (n <= 16).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees_with_oracle: Option<bool>,
    /// Variable numbers in step order, list algorithms only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub used_complement: Option<bool>,
    /// Butterfly XOR count the estimate is compared with.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_ops: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub savings_percent: Option<f64>,
}

impl BenchReport {
    pub fn new(algorithm: impl Into<String>, n: u32, input: impl Into<String>, ops: u64, unit: &'static str) -> Self {
        BenchReport {
            algorithm: algorithm.into(),
            n,
            input: input.into(),
            ops,
            unit,
            wall_ns: None,
            agrees_with_oracle: None,
            order: None,
            used_complement: None,
            baseline_ops: None,
            savings_percent: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Fixed-width line for terminals.
    pub fn to_text(&self) -> String {
        let oracle = match self.agrees_with_oracle {
            Some(true) => "agrees",
            Some(false) => "DIFFERS",
            None => "-",
        };
        let mut line = format!(
            "{:<11} n={:<3} {:>10} {:<12} oracle={:<7} {}",
            self.algorithm, self.n, self.ops, self.unit, oracle, self.input
        );
        if let Some(order) = &self.order {
            let order: Vec<String> = order.iter().map(u32::to_string).collect();
            line.push_str(&format!(" order={}", order.join(",")));
        }
        if self.used_complement == Some(true) {
            line.push_str(" via-complement");
        }
        if let (Some(base), Some(s)) = (self.baseline_ops, self.savings_percent) {
            line.push_str(&format!(" baseline={base} savings={s:.2}%"));
        }
        if let Some(ns) = self.wall_ns {
            line.push_str(&format!(" wall={ns}ns"));
        }
        line
    }
}
