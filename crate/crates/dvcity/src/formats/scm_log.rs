use std::io::BufRead;

use dvcity_core::{CommitSet, IngestError, Timestamp};

use super::{ParseError, ParseErrorKind};
use crate::timefmt::parse_timestamp;

struct Pending {
    line: usize,
    id: String,
    ts: Timestamp,
    author: String,
    message: Vec<String>,
    files: Vec<String>,
}

impl Pending {
    fn finish(self) -> Result<CommitSet, ParseError> {
        if self.files.is_empty() {
            return Err(ParseError::new(
                self.line,
                IngestError::EmptyFileList { commit: self.id },
            ));
        }
        CommitSet::new(
            self.id,
            self.ts,
            self.author,
            self.message.join("\n"),
            self.files,
        )
        .map_err(|e| ParseError::new(self.line, e))
    }
}

fn header(line: &str, line_no: usize) -> Result<Pending, ParseError> {
    let malformed = |why: &str| {
        ParseError::new(
            line_no,
            ParseErrorKind::Malformed(format!("{why} in header {line:?}")),
        )
    };
    let rest = line
        .strip_prefix("commit ")
        .ok_or_else(|| malformed("expected `commit <id> <timestamp> <author>`"))?;
    let mut parts = rest.trim_start().splitn(3, ' ');
    let id = parts
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| malformed("missing id"))?;
    let ts_text = parts
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| malformed("missing timestamp"))?;
    let ts = parse_timestamp(ts_text)
        .ok_or_else(|| ParseError::new(line_no, ParseErrorKind::Timestamp(ts_text.into())))?;
    Ok(Pending {
        line: line_no,
        id: id.into(),
        ts,
        author: parts.next().unwrap_or("").trim().into(),
        message: Vec::new(),
        files: Vec::new(),
    })
}

/// Reads the plain-text SCM log: blank-line separated entries of a
/// `commit <id> <timestamp> <author>` header, indented message lines, then
/// one path per line. Entries keep stream order.
pub fn parse_scm_log<R: BufRead>(reader: R) -> Result<Vec<CommitSet>, ParseError> {
    let mut out = Vec::new();
    let mut pending: Option<Pending> = None;
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| ParseError::new(line_no, e))?;
        let line = line.trim_end_matches('\r');
        let indented = line.starts_with("    ") || line.starts_with('\t');
        if line.trim().is_empty() && !indented {
            if let Some(p) = pending.take() {
                out.push(p.finish()?);
            }
            continue;
        }
        match pending.as_mut() {
            None => pending = Some(header(line, line_no)?),
            Some(p) if indented => {
                if !p.files.is_empty() {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Malformed("message line after file list".into()),
                    ));
                }
                let text = line.strip_prefix("    ").unwrap_or_else(|| &line[1..]);
                p.message.push(text.into());
            }
            Some(p) => p.files.push(line.trim().into()),
        }
    }
    if let Some(p) = pending {
        out.push(p.finish()?);
    }
    Ok(out)
}
