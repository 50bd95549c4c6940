//! Self-check that recomputes the classic worked examples and compares them
//! against a table of expected strings.

use crate::constructions::run_number;
use crate::isomorphism::{from_characteristic_vector, hamming_distance, to_characteristic_vector, BinaryVector};
use crate::multiset::{Alphabet, Multiset};

/// An example id and the string its computation must produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkedExample {
    pub id: &'static str,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleOutcome {
    pub id: &'static str,
    pub expected: String,
    pub actual: String,
}

impl ExampleOutcome {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn example(id: &'static str, expected: &str) -> WorkedExample {
    WorkedExample {
        id,
        expected: expected.to_string(),
    }
}

/// The expected table.
pub fn default_examples() -> Vec<WorkedExample> {
    vec![
        example("set.characteristic({1,2})", "11000"),
        example("set.characteristic({2,4})", "01010"),
        example("set.distance({1,2},{2,4})", "2"),
        example("set.symmetric_difference({1,2},{2,4})", "{1,4}"),
        example("binary.hamming(11000,01010)", "2"),
        example(
            "set.code_from_binary(11000,01010,01110,00111)",
            "{1,2} {2,4} {2,3,4} {3,4,5}",
        ),
        example("set.from_characteristic(00111)", "{3,4,5}"),
        example("multiset.intersection(X,Y)", "{1,2,2,3}"),
        example("multiset.union(X,Y)", "{1,2,2,2,3,3,4}"),
        example("multiset.difference(X,Y)", "{2}"),
        example("multiset.difference(Y,X)", "{3,4}"),
        example("multiset.cardinality(X)", "5"),
        example("multiset.cardinality(Y)", "6"),
        example("runs.number(a,a,b,b,c,b)", "(1∘a, 1∘a, 2∘b, 2∘b, 3∘c, 4∘b)"),
    ]
}

fn compute(id: &str) -> String {
    let q5 = Alphabet::new(5).expect("nonzero");
    let q4 = Alphabet::new(4).expect("nonzero");
    let set = |e: &[usize]| Multiset::from_elements(e.iter().copied(), q5).expect("in range");
    let bits = |s: &str| s.parse::<BinaryVector>().expect("bit string");
    let x = Multiset::from_elements([1, 2, 2, 2, 3], q4).expect("in range");
    let y = Multiset::from_elements([1, 2, 2, 3, 3, 4], q4).expect("in range");

    let result: crate::Result<String> = (|| {
        Ok(match id {
            "set.characteristic({1,2})" => to_characteristic_vector(&set(&[1, 2]))?.to_string(),
            "set.characteristic({2,4})" => to_characteristic_vector(&set(&[2, 4]))?.to_string(),
            "set.distance({1,2},{2,4})" => set(&[1, 2]).distance(&set(&[2, 4]))?.to_string(),
            "set.symmetric_difference({1,2},{2,4})" => {
                set(&[1, 2]).symmetric_difference(&set(&[2, 4]))?.to_string()
            }
            "binary.hamming(11000,01010)" => hamming_distance(&bits("11000"), &bits("01010"))?.to_string(),
            "set.code_from_binary(11000,01010,01110,00111)" => ["11000", "01010", "01110", "00111"]
                .iter()
                .map(|b| from_characteristic_vector(&bits(b)).map(|m| m.to_string()))
                .collect::<crate::Result<Vec<_>>>()?
                .join(" "),
            "set.from_characteristic(00111)" => from_characteristic_vector(&bits("00111"))?.to_string(),
            "multiset.intersection(X,Y)" => x.intersection(&y)?.to_string(),
            "multiset.union(X,Y)" => x.union(&y)?.to_string(),
            "multiset.difference(X,Y)" => x.difference(&y)?.to_string(),
            "multiset.difference(Y,X)" => y.difference(&x)?.to_string(),
            "multiset.cardinality(X)" => x.cardinality().to_string(),
            "multiset.cardinality(Y)" => y.cardinality().to_string(),
            "runs.number(a,a,b,b,c,b)" => {
                let tagged = run_number(&[0, 0, 1, 1, 2, 1]);
                let parts: Vec<String> = tagged
                    .iter()
                    .map(|t| format!("{}∘{}", t.seq, char::from(b'a' + t.payload as u8)))
                    .collect();
                format!("({})", parts.join(", "))
            }
            other => format!("<unknown example {other}>"),
        })
    })();
    result.unwrap_or_else(|e| format!("<error: {e}>"))
}

/// Recomputes every example in `table`.
pub fn run_examples(table: &[WorkedExample]) -> Vec<ExampleOutcome> {
    table
        .iter()
        .map(|ex| ExampleOutcome {
            id: ex.id,
            expected: ex.expected.clone(),
            actual: compute(ex.id),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table_passes() {
        let outcomes = run_examples(&default_examples());
        for o in &outcomes {
            assert!(o.passed(), "{}: expected {} got {}", o.id, o.expected, o.actual);
        }
    }

    #[test]
    fn corrupted_table_fails_with_diff() {
        let mut table = default_examples();
        table[7].expected = "{1,2,3}".into();
        let outcomes = run_examples(&table);
        let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed()).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].id, "multiset.intersection(X,Y)");
        assert_eq!(failed[0].actual, "{1,2,2,3}");
    }

    #[test]
    fn repeated_runs_are_identical() {
        assert_eq!(run_examples(&default_examples()), run_examples(&default_examples()));
    }

    #[test]
    fn unknown_ids_fail() {
        let outcomes = run_examples(&[example("nope", "1")]);
        assert!(!outcomes[0].passed());
    }
}
