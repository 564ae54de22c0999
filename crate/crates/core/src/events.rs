//! Start and end events of match pairs, in sweep order.

use crate::match_pairs::MatchPair;

/// Ends sort before starts at the same coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventKind {
    End,
    Start,
}

/// Field order gives the sweep order: row, column, end-before-start, pair id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event {
    pub row: usize,
    pub col: usize,
    pub kind: EventKind,
    pub pair_id: usize,
}

/// Two events per pair, sorted row-major with ends first on ties.
pub fn build_events(pairs: &[MatchPair], k: usize) -> Vec<Event> {
    let mut events = Vec::with_capacity(2 * pairs.len());
    for (pair_id, p) in pairs.iter().enumerate() {
        events.push(Event {
            row: p.i,
            col: p.j,
            kind: EventKind::Start,
            pair_id,
        });
        events.push(Event {
            row: p.i + k,
            col: p.j + k,
            kind: EventKind::End,
            pair_id,
        });
    }
    events.sort_unstable();
    events
}
