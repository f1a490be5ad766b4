//! Split, route, reassemble: a message pipeline whose output is independent
//! of every intermediate choice.
//!
//! A message is cut into labelled parts at seeded pseudorandom positions,
//! each part travels a seeded random simple path through a relay network,
//! the parts arrive in a seeded random order, and reassembly sorts by label.
//! The output equals the input for every seed, which is the point: the
//! labels make the result a function of the message alone, not of how it
//! was cut, routed, or reordered.
//!
//! All randomness comes from ChaCha8 streams seeded explicitly, so a run is
//! reproducible byte for byte from `(message, n, network, seeds)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Errors from network construction and the relay pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelayError {
    #[error("invalid network: {reason}")]
    InvalidNetwork { reason: String },
    #[error("server {server} cannot reach the receiver")]
    UnreachableReceiver { server: ServerId },
    #[error("no part carries index {index}")]
    MissingPart { index: usize },
    #[error("index {index} is carried by more than one part")]
    DuplicateIndex { index: usize },
    #[error("parts disagree on the total count ({first} vs {second})")]
    InconsistentTotal { first: usize, second: usize },
}

/// An ordered sequence of octets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Message(pub Vec<u8>);

impl Message {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One labelled piece of a split message. The label (`index` of `total`)
/// is what makes reassembly independent of delivery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledPart {
    pub index: usize,
    pub total: usize,
    pub payload: Vec<u8>,
}

/// Name of a relay server.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ServerId(String);

impl ServerId {
    pub fn new(name: impl Into<String>) -> Self {
        ServerId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ServerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A directed relay network with a distinguished source and receiver.
/// Construction verifies that the receiver is reachable from every server,
/// so routing can never strand a part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServerNetwork {
    servers: BTreeSet<ServerId>,
    links: BTreeSet<(ServerId, ServerId)>,
    source: ServerId,
    receiver: ServerId,
}

impl ServerNetwork {
    pub fn new(
        servers: impl IntoIterator<Item = ServerId>,
        links: impl IntoIterator<Item = (ServerId, ServerId)>,
        source: ServerId,
        receiver: ServerId,
    ) -> Result<Self, RelayError> {
        let servers: BTreeSet<ServerId> = servers.into_iter().collect();
        for endpoint in [&source, &receiver] {
            if !servers.contains(endpoint) {
                return Err(RelayError::InvalidNetwork {
                    reason: format!("{endpoint} is not among the declared servers"),
                });
            }
        }
        let links: BTreeSet<(ServerId, ServerId)> = links.into_iter().collect();
        for (from, to) in &links {
            for end in [from, to] {
                if !servers.contains(end) {
                    return Err(RelayError::InvalidNetwork {
                        reason: format!("link endpoint {end} is not a declared server"),
                    });
                }
            }
        }
        // Reverse reachability from the receiver covers every server.
        let mut reached: BTreeSet<&ServerId> = BTreeSet::from([&receiver]);
        let mut queue = VecDeque::from([&receiver]);
        while let Some(node) = queue.pop_front() {
            for (from, to) in &links {
                if to == node && reached.insert(from) {
                    queue.push_back(from);
                }
            }
        }
        for server in &servers {
            if !reached.contains(server) {
                return Err(RelayError::UnreachableReceiver {
                    server: server.clone(),
                });
            }
        }
        Ok(ServerNetwork {
            servers,
            links,
            source,
            receiver,
        })
    }

    pub fn servers(&self) -> impl Iterator<Item = &ServerId> {
        self.servers.iter()
    }

    pub fn links(&self) -> impl Iterator<Item = &(ServerId, ServerId)> {
        self.links.iter()
    }

    pub fn source(&self) -> &ServerId {
        &self.source
    }

    pub fn receiver(&self) -> &ServerId {
        &self.receiver
    }

    fn outgoing(&self, from: &ServerId) -> Vec<&ServerId> {
        self.links
            .iter()
            .filter(|(f, _)| f == from)
            .map(|(_, t)| t)
            .collect()
    }
}

/// A delivered part with the path it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliveredPart {
    pub part: LabelledPart,
    pub route: Vec<ServerId>,
}

/// A full pipeline record: everything needed to audit one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelayRun {
    pub message: Message,
    pub parts: Vec<LabelledPart>,
    /// Routes by part index.
    pub routes: Vec<Vec<ServerId>>,
    /// Part indices in arrival order.
    pub delivered_order: Vec<usize>,
    pub output: Message,
}

/// Splits a message into `n` labelled parts at seeded cut positions. Parts
/// may be empty; their concatenation in index order is the input. The cut
/// positions are a sorted sample (with replacement) of `0..=len`.
pub fn split(m: &Message, n: usize, seed: u64) -> Vec<LabelledPart> {
    assert!(n >= 1, "a split needs at least one part");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cuts: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..=m.len())).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(n);
    let mut start = 0;
    for i in 0..n {
        let end = if i == n - 1 { m.len() } else { cuts[i] };
        parts.push(LabelledPart {
            index: i,
            total: n,
            payload: m.0[start..end].to_vec(),
        });
        start = end;
    }
    parts
}

/// A seeded random simple path from `from` to the network receiver:
/// depth-first with shuffled neighbor order and backtracking. Guaranteed to
/// arrive because network construction verified reachability.
fn random_simple_path(
    net: &ServerNetwork,
    from: &ServerId,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ServerId>, RelayError> {
    let mut path = vec![from.clone()];
    let mut visited = BTreeSet::from([from.clone()]);
    // Frames of candidate continuations, consumed in shuffled order.
    let mut frames: Vec<Vec<ServerId>> = Vec::new();
    let mut initial: Vec<ServerId> = net.outgoing(from).into_iter().cloned().collect();
    initial.shuffle(rng);
    frames.push(initial);
    loop {
        if path.last() == Some(&net.receiver) {
            return Ok(path);
        }
        let frame = frames.last_mut().expect("one frame per path node");
        match frame.pop() {
            Some(next) if visited.contains(&next) => continue,
            Some(next) => {
                visited.insert(next.clone());
                path.push(next.clone());
                let mut candidates: Vec<ServerId> =
                    net.outgoing(&next).into_iter().cloned().collect();
                candidates.shuffle(rng);
                frames.push(candidates);
            }
            None => {
                frames.pop();
                let dead_end = path.pop().expect("path is never empty");
                if path.is_empty() {
                    return Err(RelayError::UnreachableReceiver { server: dead_end });
                }
            }
        }
    }
}

/// Routes every part from the source to the receiver along a seeded random
/// simple path, then delivers them in a seeded random order.
pub fn route(
    parts: &[LabelledPart],
    net: &ServerNetwork,
    seed: u64,
) -> Result<Vec<DeliveredPart>, RelayError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut delivered: Vec<DeliveredPart> = parts
        .iter()
        .map(|part| {
            Ok(DeliveredPart {
                part: part.clone(),
                route: random_simple_path(net, &net.source, &mut rng)?,
            })
        })
        .collect::<Result<_, RelayError>>()?;
    delivered.shuffle(&mut rng);
    Ok(delivered)
}

/// Concatenates delivered parts by their labels, ignoring arrival order.
/// The parts must agree on `total` and cover each index exactly once.
pub fn reassemble(parts: &[DeliveredPart]) -> Result<Message, RelayError> {
    let total = match parts.first() {
        None => return Ok(Message(Vec::new())),
        Some(first) => first.part.total,
    };
    let mut by_index: BTreeMap<usize, &LabelledPart> = BTreeMap::new();
    for delivered in parts {
        let part = &delivered.part;
        if part.total != total {
            return Err(RelayError::InconsistentTotal {
                first: total,
                second: part.total,
            });
        }
        if by_index.insert(part.index, part).is_some() {
            return Err(RelayError::DuplicateIndex { index: part.index });
        }
    }
    let mut output = Vec::new();
    for index in 0..total {
        let part = by_index
            .get(&index)
            .ok_or(RelayError::MissingPart { index })?;
        output.extend_from_slice(&part.payload);
    }
    Ok(Message(output))
}

/// Runs the full pipeline and records every intermediate choice. The
/// output always equals the input message; the record shows which cuts,
/// routes, and arrival order were drawn for the given seeds.
pub fn run_relay(
    m: &Message,
    n: usize,
    net: &ServerNetwork,
    seed_split: u64,
    seed_route: u64,
) -> Result<RelayRun, RelayError> {
    let parts = split(m, n, seed_split);
    let delivered = route(&parts, net, seed_route)?;
    let output = reassemble(&delivered)?;
    let mut routes = vec![Vec::new(); n];
    for d in &delivered {
        routes[d.part.index] = d.route.clone();
    }
    let delivered_order = delivered.iter().map(|d| d.part.index).collect();
    Ok(RelayRun {
        message: m.clone(),
        parts,
        routes,
        delivered_order,
        output,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn server(s: &str) -> ServerId {
        ServerId::new(s)
    }

    /// source -> {mid1, mid2, mid3} -> receiver with two cross links.
    fn diamond() -> ServerNetwork {
        let names = ["source", "mid1", "mid2", "mid3", "receiver"];
        ServerNetwork::new(
            names.map(server),
            [
                (server("source"), server("mid1")),
                (server("source"), server("mid2")),
                (server("source"), server("mid3")),
                (server("mid1"), server("receiver")),
                (server("mid2"), server("receiver")),
                (server("mid3"), server("receiver")),
                (server("mid1"), server("mid2")),
                (server("mid3"), server("mid2")),
            ],
            server("source"),
            server("receiver"),
        )
        .unwrap()
    }

    #[test]
    fn split_concatenates_back() {
        let m = Message(b"abcdef".to_vec());
        for n in 1..=8 {
            for seed in 0..10 {
                let parts = split(&m, n, seed);
                assert_eq!(parts.len(), n);
                let concat: Vec<u8> = parts.iter().flat_map(|p| p.payload.clone()).collect();
                assert_eq!(concat, m.0);
                for (i, p) in parts.iter().enumerate() {
                    assert_eq!((p.index, p.total), (i, n));
                }
            }
        }
    }

    #[test]
    fn split_of_empty_message_is_empty_parts() {
        let parts = split(&Message(Vec::new()), 4, 7);
        assert_eq!(parts.len(), 4);
        assert!(parts.iter().all(|p| p.payload.is_empty()));
    }

    #[test]
    fn split_single_part_is_whole_message() {
        let m = Message(b"payload".to_vec());
        let parts = split(&m, 1, 99);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].payload, m.0);
    }

    #[test]
    fn split_is_deterministic_in_seed() {
        let m = Message(b"determinism".to_vec());
        assert_eq!(split(&m, 5, 42), split(&m, 5, 42));
    }

    #[test]
    fn routes_are_simple_paths_to_the_receiver() {
        let net = diamond();
        let m = Message(b"route me".to_vec());
        let parts = split(&m, 4, 1);
        let delivered = route(&parts, &net, 2).unwrap();
        for d in &delivered {
            assert_eq!(d.route.first(), Some(net.source()));
            assert_eq!(d.route.last(), Some(net.receiver()));
            let distinct: BTreeSet<_> = d.route.iter().collect();
            assert_eq!(distinct.len(), d.route.len(), "path revisits a server");
            for pair in d.route.windows(2) {
                assert!(
                    net.links().any(|l| l == &(pair[0].clone(), pair[1].clone())),
                    "route uses a missing link"
                );
            }
        }
    }

    #[test]
    fn network_requires_receiver_reachability() {
        let err = ServerNetwork::new(
            ["source", "sink", "receiver"].map(server),
            [
                (server("source"), server("receiver")),
                (server("receiver"), server("sink")),
            ],
            server("source"),
            server("receiver"),
        )
        .unwrap_err();
        assert_eq!(
            err,
            RelayError::UnreachableReceiver {
                server: server("sink")
            }
        );
    }

    #[test]
    fn reassembly_ignores_arrival_order() {
        let m = Message(b"order independent".to_vec());
        let parts = split(&m, 5, 3);
        let mut delivered: Vec<DeliveredPart> = parts
            .iter()
            .map(|p| DeliveredPart {
                part: p.clone(),
                route: Vec::new(),
            })
            .collect();
        delivered.reverse();
        assert_eq!(reassemble(&delivered).unwrap(), m);
    }

    #[test]
    fn reassembly_rejects_corrupted_deliveries() {
        let m = Message(b"abc".to_vec());
        let parts = split(&m, 3, 0);
        let wrap = |p: &LabelledPart| DeliveredPart {
            part: p.clone(),
            route: Vec::new(),
        };
        let missing: Vec<DeliveredPart> =
            parts.iter().filter(|p| p.index != 1).map(wrap).collect();
        assert_eq!(
            reassemble(&missing).unwrap_err(),
            RelayError::MissingPart { index: 1 }
        );
        let mut duplicated: Vec<DeliveredPart> = parts.iter().map(wrap).collect();
        duplicated.push(wrap(&parts[0]));
        assert_eq!(
            reassemble(&duplicated).unwrap_err(),
            RelayError::DuplicateIndex { index: 0 }
        );
        let mut inconsistent: Vec<DeliveredPart> = parts.iter().map(wrap).collect();
        inconsistent[2].part.total = 7;
        assert_eq!(
            reassemble(&inconsistent).unwrap_err(),
            RelayError::InconsistentTotal { first: 3, second: 7 }
        );
    }

    #[test]
    fn relay_output_is_independent_of_all_seeds() {
        let net = diamond();
        let m = Message(b"the message survives every choice".to_vec());
        let mut outputs = Vec::new();
        for seed_split in 0..5 {
            for seed_route in 0..4 {
                let run = run_relay(&m, 6, &net, seed_split, seed_route).unwrap();
                assert_eq!(run.output, m);
                outputs.push(run.output);
            }
        }
        assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn relay_runs_are_reproducible() {
        let net = diamond();
        let m = Message(b"replay".to_vec());
        let a = run_relay(&m, 3, &net, 11, 13).unwrap();
        let b = run_relay(&m, 3, &net, 11, 13).unwrap();
        assert_eq!(a, b);
    }
}
