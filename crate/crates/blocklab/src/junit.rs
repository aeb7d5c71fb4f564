//! JUnit XML rendering of a verification run, one testsuite per corpus
//! entry and one testcase per verdict.

use crate::report::{EntryStatus, VerifyReport, VerdictStatus};

pub fn junit_xml(report: &VerifyReport) -> String {
    let mut suites = String::new();
    let mut tests = 0usize;
    let mut failures = 0usize;
    let mut errors = 0usize;
    let mut skipped = 0usize;

    for entry in &report.entries {
        let suite_name = format!("{}.p{}", entry.name, entry.prime);
        match (&entry.report, &entry.error) {
            (Some(analysis), _) => {
                let mut cases = String::new();
                let mut s_fail = 0usize;
                let mut s_skip = 0usize;
                for v in &analysis.verdicts {
                    tests += 1;
                    match v.status {
                        VerdictStatus::Pass => {
                            cases.push_str(&format!(
                                "    <testcase name=\"{}\" classname=\"{}\"/>\n",
                                esc(&v.name),
                                esc(&suite_name)
                            ));
                        }
                        VerdictStatus::Fail => {
                            failures += 1;
                            s_fail += 1;
                            cases.push_str(&format!(
                                "    <testcase name=\"{}\" classname=\"{}\">\n      <failure message=\"{}\"/>\n    </testcase>\n",
                                esc(&v.name),
                                esc(&suite_name),
                                esc(&v.detail)
                            ));
                        }
                        VerdictStatus::NotApplicable => {
                            skipped += 1;
                            s_skip += 1;
                            cases.push_str(&format!(
                                "    <testcase name=\"{}\" classname=\"{}\">\n      <skipped message=\"{}\"/>\n    </testcase>\n",
                                esc(&v.name),
                                esc(&suite_name),
                                esc(&v.detail)
                            ));
                        }
                    }
                }
                suites.push_str(&format!(
                    "  <testsuite name=\"{}\" tests=\"{}\" failures=\"{}\" errors=\"0\" skipped=\"{}\">\n{}  </testsuite>\n",
                    esc(&suite_name),
                    analysis.verdicts.len(),
                    s_fail,
                    s_skip,
                    cases
                ));
            }
            (None, err) => {
                tests += 1;
                errors += 1;
                let msg = err.as_deref().unwrap_or("unknown error");
                suites.push_str(&format!(
                    "  <testsuite name=\"{}\" tests=\"1\" failures=\"0\" errors=\"1\" skipped=\"0\">\n    <testcase name=\"analyze\" classname=\"{}\">\n      <error message=\"{}\"/>\n    </testcase>\n  </testsuite>\n",
                    esc(&suite_name),
                    esc(&suite_name),
                    esc(msg)
                ));
            }
        }
        debug_assert!(matches!(
            entry.status,
            EntryStatus::Pass | EntryStatus::Fail | EntryStatus::Error
        ));
    }

    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<testsuites name=\"blocklab\" tests=\"{tests}\" failures=\"{failures}\" errors=\"{errors}\" skipped=\"{skipped}\">\n{suites}</testsuites>\n"
    )
}

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{EntryReport, VerifyReport};

    #[test]
    fn real_entry_renders_cases_and_skips() {
        let entry = crate::corpus::run_entry("c2", 2, 0);
        assert_eq!(entry.status, EntryStatus::Pass);
        let xml = junit_xml(&VerifyReport::new("default", 0, vec![entry]));
        assert!(xml.starts_with("<?xml version=\"1.0\""));
        assert!(xml.contains("<testsuite name=\"c2.p2\" tests=\"13\" failures=\"0\""));
        assert!(xml.contains("<testcase name=\"lower_defect_consistency\" classname=\"c2.p2\"/>"));
        // c2 mod 2 has no applicable inertial instances, so skips appear.
        assert!(xml.contains("<skipped"));
        assert!(xml.contains("failures=\"0\" errors=\"0\""));
    }

    #[test]
    fn escapes_and_counts() {
        let entries = vec![EntryReport {
            name: "x<y>".to_string(),
            prime: 2,
            status: EntryStatus::Error,
            error: Some("a \"quoted\" & <tagged> message".to_string()),
            report: None,
        }];
        let xml = junit_xml(&VerifyReport::new("default", 0, entries));
        assert!(xml.contains("errors=\"1\""));
        assert!(xml.contains("x&lt;y&gt;.p2"));
        assert!(xml.contains("&quot;quoted&quot; &amp; &lt;tagged&gt;"));
        assert!(!xml.contains("<tagged>"));
    }
}
