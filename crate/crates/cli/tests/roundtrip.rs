use extclosed_cli::{Command, Invocation, Property};
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = String> {
    "[A-Za-z0-9:(),;* +-]{1,24}".prop_filter("non-blank", |s| !s.trim().is_empty())
}

fn item() -> impl Strategy<Value = String> {
    "[a-z0-9_]{1,8}"
}

fn property() -> impl Strategy<Value = Property> {
    prop::sample::select(vec![
        Property::WeaklyClosed,
        Property::StronglyClosed,
        Property::ExtremelyClosed,
        Property::Pronormal,
        Property::Abnormal,
        Property::Isolated,
        Property::Special,
        Property::Ne,
        Property::WTriple,
        Property::Gamma,
        Property::Classify,
    ])
}

fn command() -> impl Strategy<Value = Command> {
    prop_oneof![
        (spec(), proptest::option::of(any::<u64>())).prop_map(|(group, prime)| Command::Info { group, prime }),
        (
            spec(),
            spec(),
            property(),
            proptest::option::of(spec()),
            proptest::option::of(spec()),
            any::<bool>()
        )
            .prop_map(|(group, subgroup, property, overgroup, element, all_g)| Command::Check {
                group,
                subgroup,
                property,
                overgroup,
                element,
                all_g,
            }),
        (
            proptest::option::of(spec()),
            item(),
            proptest::option::of(any::<u64>()),
            proptest::option::of(spec())
        )
            .prop_map(|(group, statement, prime, element)| Command::Verify {
                group,
                statement,
                prime,
                element,
            }),
        (spec(), prop::collection::vec(item(), 0..4), prop::collection::vec(any::<u64>(), 0..4))
            .prop_map(|(corpus, statements, primes)| Command::Sweep {
                corpus,
                statements,
                primes,
            }),
        Just(Command::Repro),
    ]
}

fn invocation() -> impl Strategy<Value = Invocation> {
    (
        command(),
        any::<bool>(),
        proptest::option::of(any::<u64>()),
        proptest::option::of(any::<u64>()),
    )
        .prop_map(|(command, json, element_bound, subgroup_bound)| Invocation {
            command,
            json,
            element_bound,
            subgroup_bound,
        })
}

proptest! {
    #[test]
    fn parse_inverts_render(inv in invocation()) {
        std::env::remove_var("EXTCLOSED_ELEMENT_BOUND");
        std::env::remove_var("EXTCLOSED_SUBGROUP_BOUND");
        let parsed = Invocation::parse_args(inv.render()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(parsed, inv);
    }
}

#[test]
fn spec_example_parses() {
    let inv = Invocation::parse_args([
        "check",
        "--group",
        "catalog:S4",
        "--subgroup",
        "gens:(1,2,3)",
        "--property",
        "extremely-closed",
    ])
    .unwrap();
    assert!(matches!(inv.command, Command::Check { property: Property::ExtremelyClosed, .. }));
    assert_eq!(Invocation::parse_args(inv.render()).unwrap(), inv);
}
