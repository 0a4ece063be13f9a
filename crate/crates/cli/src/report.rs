use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Status column of a dimension entry: `exact`, `truncated`, `stabilized@r`
/// or `bound_limited`.
fn status(entry: &Value) -> String {
    match &entry["status"] {
        Value::Object(m) => match (m.get("verdict"), m.get("level")) {
            (Some(v), Some(l)) => format!("{}@{l}", cell(v)),
            (Some(v), None) => cell(v),
            _ => Value::Object(m.clone()).to_string(),
        },
        other => cell(other),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        other => {
            out.push_str(prefix);
            out.push('\t');
            out.push_str(&cell(other));
            out.push('\n');
        }
    }
}

/// Tab-separated rendering of a report. Dimension tables become one row per
/// degree, check results one row per check; anything else is flattened into
/// `key<TAB>value` lines.
pub fn tsv(report: &Value) -> String {
    let mut out = String::new();
    match report["command"].as_str() {
        Some("hh" | "hc") => {
            out.push_str(&format!("# {} bar_bound={}\n", cell(&report["command"]), report["bar_bound"]));
            out.push_str("degree\tdim\tstatus\n");
            if let Some(m) = report["degrees"].as_object() {
                for (n, e) in m {
                    out.push_str(&format!("{n}\t{}\t{}\n", e["dim"], status(e)));
                }
            }
        }
        Some("hp") => {
            out.push_str("kind\tdegree\tdim\tstatus\tbar_bound\n");
            for kind in ["negative", "periodic"] {
                let t = &report[kind];
                if let Some(m) = t["degrees"].as_object() {
                    for (n, e) in m {
                        out.push_str(&format!("{kind}\t{n}\t{}\t{}\t{}\n", e["dim"], status(e), t["bar_bound"]));
                    }
                }
            }
        }
        Some("check") => {
            out.push_str("item\tcheck\tverdict\tdetail\n");
            if let Some(rs) = report["results"].as_array() {
                for r in rs {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\n",
                        cell(&r["item"]),
                        cell(&r["check"]),
                        cell(&r["verdict"]),
                        cell(&r["detail"])
                    ));
                }
            }
        }
        _ => flatten("", report, &mut out),
    }
    out
}
