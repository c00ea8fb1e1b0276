use serde_json::{Map, Value};

/// An ordered list of report fields.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report(pub Vec<(String, String)>);

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.0.push((key.into(), value.to_string()));
        self
    }

    pub fn extend<K: Into<String>>(
        &mut self,
        fields: impl IntoIterator<Item = (K, String)>,
    ) -> &mut Self {
        self.0
            .extend(fields.into_iter().map(|(k, v)| (k.into(), v)));
        self
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    /// Booleans and integers that fit in a u64 or i64 become JSON scalars;
    /// everything else stays a string.
    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.0 {
            let value = match v.as_str() {
                "true" => Value::Bool(true),
                "false" => Value::Bool(false),
                _ => v
                    .parse::<u64>()
                    .map(Value::from)
                    .or_else(|_| v.parse::<i64>().map(Value::from))
                    .unwrap_or_else(|_| Value::String(v.clone())),
            };
            map.insert(k.clone(), value);
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_key_order_and_types() {
        let mut r = Report::new();
        r.push("zeta", 1)
            .push("alpha", true)
            .push("big", "123456789012345678901234567890");
        assert_eq!(
            r.to_text(),
            "zeta=1\nalpha=true\nbig=123456789012345678901234567890\n"
        );
        assert_eq!(
            r.to_json(),
            "{\n  \"zeta\": 1,\n  \"alpha\": true,\n  \"big\": \"123456789012345678901234567890\"\n}\n"
        );
    }
}
