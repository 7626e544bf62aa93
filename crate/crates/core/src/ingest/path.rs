use alloc::string::String;
use alloc::vec::Vec;

use super::IngestError;

/// Normalizes a repo-relative path.
///
/// Backslashes become forward slashes, leading slashes as well as empty and
/// `.` segments are dropped, and `..` pops the previous segment. A path that
/// climbs above the repository root, normalizes to nothing, or contains a
/// control character (tabs included) is rejected.
pub fn normalize_path(raw: &str) -> Result<String, IngestError> {
    if raw.chars().any(char::is_control) {
        return Err(IngestError::InvalidPath {
            path: raw.into(),
            reason: "control character in path",
        });
    }
    let mut segments: Vec<&str> = Vec::new();
    for seg in raw.split(['/', '\\']) {
        match seg {
            "" | "." => {}
            ".." => {
                if segments.pop().is_none() {
                    return Err(IngestError::InvalidPath {
                        path: raw.into(),
                        reason: "path escapes the repository root",
                    });
                }
            }
            s => segments.push(s),
        }
    }
    if segments.is_empty() {
        return Err(IngestError::InvalidPath {
            path: raw.into(),
            reason: "empty path",
        });
    }
    Ok(segments.join("/"))
}
