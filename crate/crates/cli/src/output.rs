use serde_json::Value;
use vcoalg::checks::Report;

use crate::Format;

/// A report together with command-specific data. In JSON the data becomes
/// extra top-level keys after `checks`; in text it follows the report.
pub struct Output {
    pub report: Report,
    pub extra: Vec<(&'static str, Value)>,
    pub text: String,
}

impl Output {
    pub fn new(report: Report) -> Self {
        Output {
            report,
            extra: Vec::new(),
            text: String::new(),
        }
    }

    pub fn with(mut self, key: &'static str, value: Value, text: String) -> Self {
        self.extra.push((key, value));
        self.text.push_str(&text);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => format!("{}{}", self.report.to_text(), self.text),
            Format::Json => {
                let mut v = serde_json::to_value(&self.report).expect("report serializes");
                let obj = v.as_object_mut().expect("report is an object");
                for (k, x) in &self.extra {
                    obj.insert((*k).to_string(), x.clone());
                }
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json serializes"))
            }
        }
    }
}
