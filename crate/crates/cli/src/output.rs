//! Output envelope and the three renderers.
//!
//! Every run serializes the same envelope: the command name, the full
//! effective configuration, and the result payload. JSON keys are sorted
//! (serde_json's default map is ordered), rationals stay exact `"p/q"`
//! strings in json and csv modes, and a rerun with identical flags renders
//! byte-identical output.

use delsarte_core::rat::{parse_rat, rat_to_f64, rat_to_string, Int, Rat};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Human => "human",
        }
    }
}

/// Exit discipline: a definitive verdict in either direction exits 0, a run
/// that hit a budget, cap, or certification limit exits 2. Usage and input
/// errors exit 1 and never reach this type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Definitive,
    GaveUp,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Definitive => 0,
            Verdict::GaveUp => 2,
        }
    }
}

/// Tabular payload used by csv mode when a run has a natural data table
/// (cap schedules, convergence sweeps). Scalar result fields still appear,
/// as `#` comments above the table.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Output {
    pub command: &'static str,
    pub config: Map<String, Value>,
    pub result: Value,
    pub verdict: Verdict,
    pub table: Option<Table>,
}

pub fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => {
            let envelope = json!({
                "command": out.command,
                "config": out.config,
                "result": out.result,
            });
            let mut s = serde_json::to_string_pretty(&envelope).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(out),
        Format::Human => render_human(out),
    }
}

fn render_csv(out: &Output) -> String {
    let mut s = format!("# command={}\n", out.command);
    for (k, v) in &out.config {
        s.push_str(&format!("# {k}={}\n", cell(v)));
    }
    let fields = result_fields(&out.result);
    match &out.table {
        Some(table) => {
            for (k, v) in &fields {
                // Scalar result fields ride along as comments, except exact
                // duplicates of config entries already echoed above.
                if is_scalar(v) && out.config.get(*k) != Some(*v) {
                    s.push_str(&format!("# {k}={}\n", cell(v)));
                }
            }
            s.push_str(&table.header.join(","));
            s.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
        }
        None => {
            let header: Vec<String> = fields.iter().map(|(k, _)| csv_escape(k)).collect();
            let row: Vec<String> = fields.iter().map(|(_, v)| csv_escape(&cell(v))).collect();
            s.push_str(&header.join(","));
            s.push('\n');
            s.push_str(&row.join(","));
            s.push('\n');
        }
    }
    s
}

fn render_human(out: &Output) -> String {
    let mut s = format!("command: {}\nconfig:\n", out.command);
    for (k, v) in &out.config {
        s.push_str(&format!("  {k}: {}\n", human_value(v)));
    }
    s.push_str("result:\n");
    for (k, v) in result_fields(&out.result) {
        s.push_str(&format!("  {k}: {}\n", human_value(v)));
    }
    s
}

fn result_fields(result: &Value) -> Vec<(&String, &Value)> {
    result
        .as_object()
        .map(|m| m.iter().collect())
        .unwrap_or_default()
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// One table cell: scalars verbatim, everything else as compact JSON.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("serializable"),
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_owned()
    }
}

/// Human mode appends a decimal approximation, marked as approximate, to
/// any non-integer rational. Exact values stay untouched.
fn human_value(v: &Value) -> String {
    let text = cell(v);
    if let Value::String(raw) = v {
        if raw.contains('/') {
            if let Ok(r) = parse_rat(raw) {
                return format!("{text} \u{2248} {:.6}", rat_to_f64(&r));
            }
        }
    }
    text
}

pub fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => panic!("expected a JSON object, got {other}"),
    }
}

pub fn rat_str(r: &Rat) -> Value {
    Value::String(rat_to_string(r))
}

pub fn rat_list(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_str).collect())
}

pub fn opt_rat(r: &Option<Rat>) -> Value {
    r.as_ref().map(rat_str).unwrap_or(Value::Null)
}

pub fn int_str(i: &Int) -> Value {
    Value::String(i.to_string())
}

pub fn opt_int(i: &Option<Int>) -> Value {
    i.as_ref().map(int_str).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;
    use delsarte_core::rat::rat;

    fn sample() -> Output {
        Output {
            command: "bound",
            config: obj(json!({"dim": 3, "angles": "-1,1/2"})),
            result: json!({
                "bound_floor": "4",
                "gbar": "1/4",
                "schedule": [[2, "1/4"]],
            }),
            verdict: Verdict::Definitive,
            table: None,
        }
    }

    #[test]
    fn json_keys_are_sorted() {
        let text = render(&sample(), Format::Json);
        let a = text.find("\"angles\"").unwrap();
        let d = text.find("\"dim\"").unwrap();
        assert!(a < d, "object keys must serialize in sorted order");
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn csv_escapes_commas_and_quotes() {
        assert_eq!(csv_escape("1/2"), "1/2");
        assert_eq!(csv_escape("a,b"), "\"a,b\"");
        assert_eq!(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn csv_summary_row_covers_all_fields() {
        let text = render(&sample(), Format::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# command=bound");
        assert!(lines.contains(&"# angles=-1,1/2"));
        assert!(lines.contains(&"bound_floor,gbar,schedule"));
        assert!(lines.last().unwrap().starts_with("4,1/4,"));
    }

    #[test]
    fn csv_table_moves_scalars_to_comments() {
        let mut out = sample();
        out.table = Some(Table {
            header: vec!["cap", "gbar"],
            rows: vec![vec!["2".into(), "1/4".into()]],
        });
        let text = render(&out, Format::Csv);
        assert!(text.contains("# bound_floor=4\n"));
        assert!(text.contains("cap,gbar\n2,1/4\n"));
    }

    #[test]
    fn human_marks_approximations() {
        let text = render(&sample(), Format::Human);
        assert!(text.contains("gbar: 1/4 \u{2248} 0.250000"));
        assert!(text.contains("bound_floor: 4\n"), "integers stay exact");
    }

    #[test]
    fn rational_helpers_render_canonical_strings() {
        assert_eq!(rat_str(&rat(2, 4)), json!("1/2"));
        assert_eq!(rat_str(&rat(-3, 1)), json!("-3"));
        assert_eq!(opt_rat(&None), Value::Null);
        assert_eq!(int_str(&Int::from(46)), json!("46"));
    }
}
