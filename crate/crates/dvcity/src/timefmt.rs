//! ISO-8601 / RFC 3339 timestamps at second precision, always written in UTC.

use chrono::{DateTime, Utc};
use dvcity_core::{FilterError, Timestamp};

/// Parses an RFC 3339 instant such as `2016-10-01T12:00:00Z`. Offsets are
/// converted to UTC and sub-second digits are dropped.
pub fn parse_timestamp(s: &str) -> Option<Timestamp> {
    DateTime::parse_from_rfc3339(s.trim())
        .ok()
        .map(|dt| Timestamp::from_unix(dt.timestamp()))
}

/// `YYYY-MM-DDTHH:MM:SSZ`.
pub fn format_timestamp(ts: Timestamp) -> String {
    match DateTime::<Utc>::from_timestamp(ts.unix(), 0) {
        Some(dt) => dt.format("%Y-%m-%dT%H:%M:%SZ").to_string(),
        None => ts.unix().to_string(),
    }
}

/// [`FilterError`] with its timestamps in RFC 3339.
pub fn describe_filter_error(e: &FilterError) -> String {
    match e {
        FilterError::EmptyWindow { from, to } => format!(
            "time window start {} is not before its end {}",
            format_timestamp(*from),
            format_timestamp(*to)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn utc_round_trip() {
        let ts = parse_timestamp("2016-10-01T12:00:00Z").unwrap();
        assert_eq!(ts.unix(), 1_475_323_200);
        assert_eq!(format_timestamp(ts), "2016-10-01T12:00:00Z");
    }

    #[test]
    fn offsets_and_fractions() {
        assert_eq!(
            parse_timestamp("2016-10-01T14:00:00+02:00"),
            parse_timestamp("2016-10-01T12:00:00Z")
        );
        assert_eq!(
            parse_timestamp("2016-10-01T12:00:00.750Z"),
            parse_timestamp("2016-10-01T12:00:00Z")
        );
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(parse_timestamp("yesterday"), None);
        assert_eq!(parse_timestamp("2016-10-01"), None);
        assert_eq!(parse_timestamp(""), None);
    }
}
