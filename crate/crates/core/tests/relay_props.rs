//! End-to-end properties of the split, route, reassemble pipeline over
//! randomized messages, part counts, seeds, and network shapes.

use std::collections::BTreeSet;

use proptest::prelude::*;

use colimkit_core::relay::{reassemble, run_relay, split, Message, ServerId, ServerNetwork};

/// A line from source to receiver with extra random links sprinkled on top.
/// The line already lets every server reach the receiver, and extra links
/// can only add routes, so construction always succeeds.
fn random_network(size: usize, extra: &[(usize, usize)]) -> ServerNetwork {
    let servers: Vec<ServerId> = (0..size).map(|i| ServerId::new(format!("s{i}"))).collect();
    let mut links: Vec<(ServerId, ServerId)> = (1..size)
        .map(|i| (servers[i - 1].clone(), servers[i].clone()))
        .collect();
    for &(a, b) in extra {
        let (a, b) = (a % size, b % size);
        if a != b {
            links.push((servers[a].clone(), servers[b].clone()));
        }
    }
    ServerNetwork::new(
        servers.clone(),
        links,
        servers[0].clone(),
        servers[size - 1].clone(),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn split_labels_and_concatenation_recover_the_message(
        bytes in proptest::collection::vec(any::<u8>(), 0..64),
        n in 1usize..9,
        seed in any::<u64>(),
    ) {
        let message = Message(bytes.clone());
        let parts = split(&message, n, seed);
        prop_assert_eq!(parts.len(), n);
        let mut glued = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            prop_assert_eq!(part.index, i);
            prop_assert_eq!(part.total, n);
            glued.extend_from_slice(&part.payload);
        }
        prop_assert_eq!(glued, bytes);
    }

    #[test]
    fn relay_is_lossless_over_random_networks(
        bytes in proptest::collection::vec(any::<u8>(), 0..64),
        n in 1usize..9,
        size in 2usize..7,
        extra in proptest::collection::vec((0usize..8, 0usize..8), 0..6),
        seed_split in any::<u64>(),
        seed_route in any::<u64>(),
    ) {
        let net = random_network(size, &extra);
        let message = Message(bytes);
        let run = run_relay(&message, n, &net, seed_split, seed_route).unwrap();
        prop_assert_eq!(&run.output, &message);

        // Every part takes a simple path from source to receiver along links.
        let links: BTreeSet<_> = net.links().cloned().collect();
        for path in &run.routes {
            prop_assert_eq!(path.first(), Some(net.source()));
            prop_assert_eq!(path.last(), Some(net.receiver()));
            let distinct: BTreeSet<_> = path.iter().collect();
            prop_assert_eq!(distinct.len(), path.len());
            for pair in path.windows(2) {
                prop_assert!(links.contains(&(pair[0].clone(), pair[1].clone())));
            }
        }
    }

    #[test]
    fn reassembly_ignores_delivery_order(
        bytes in proptest::collection::vec(any::<u8>(), 0..48),
        n in 1usize..8,
        seed_split in any::<u64>(),
        seed_route in any::<u64>(),
        rotation in 0usize..8,
    ) {
        let net = random_network(4, &[(0, 2), (1, 3)]);
        let message = Message(bytes);
        let run = run_relay(&message, n, &net, seed_split, seed_route).unwrap();
        let mut delivered: Vec<_> = run
            .parts
            .iter()
            .enumerate()
            .map(|(i, part)| colimkit_core::relay::DeliveredPart {
                part: part.clone(),
                route: run.routes[i].clone(),
            })
            .collect();
        delivered.rotate_left(rotation % n.max(1));
        delivered.reverse();
        prop_assert_eq!(reassemble(&delivered).unwrap(), message);
    }

    #[test]
    fn runs_are_reproducible(
        bytes in proptest::collection::vec(any::<u8>(), 0..48),
        n in 1usize..8,
        seed_split in any::<u64>(),
        seed_route in any::<u64>(),
    ) {
        let net = random_network(5, &[(0, 3), (2, 4), (1, 4)]);
        let message = Message(bytes);
        let first = run_relay(&message, n, &net, seed_split, seed_route).unwrap();
        let second = run_relay(&message, n, &net, seed_split, seed_route).unwrap();
        prop_assert_eq!(first, second);
    }
}
