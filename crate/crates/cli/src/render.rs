use arr_core::genera::BetaRoute;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::commands::Outcome;
use crate::Format;

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    args: Args<'a>,
    seed: u64,
    beta_route: BetaRoute,
    digits: usize,
    max_n: usize,
    result: &'a Value,
}

/// Arguments in command-line order.
struct Args<'a>(&'a [(&'static str, Value)]);

impl Serialize for Args<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn header(o: &Outcome) -> String {
    let mut parts = vec![format!("# arr {}", o.command)];
    parts.extend(o.args.iter().map(|(k, v)| match v {
        Value::String(s) => format!("{k}={s}"),
        other => format!("{k}={other}"),
    }));
    parts.push(format!("seed={}", o.seed));
    parts.push(format!("beta-route={}", o.beta_route));
    parts.join(" ")
}

pub fn render(o: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let env = Envelope {
                command: o.command,
                args: Args(&o.args),
                seed: o.seed,
                beta_route: o.beta_route,
                digits: o.digits,
                max_n: o.max_n,
                result: &o.result,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("envelope serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = header(o);
            s.push('\n');
            for line in &o.text {
                s.push_str(line);
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut head: Vec<&str> = o.csv_header.clone();
            head.push("seed");
            w.write_record(&head).expect("in-memory write");
            let seed = o.seed.to_string();
            for row in &o.csv_rows {
                let mut row = row.clone();
                row.push(seed.clone());
                w.write_record(&row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
    }
}
