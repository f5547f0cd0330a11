"""Computing with entailment relations on preordered commutative groups.

The layers, bottom to top: decidable preordered groups (`groups`,
`numberring`), equivariant systems of ideals (`systems`), the forcing
operators T_x and U_x (`forcing`), the regularisation with replayable
certificates and the exact cone-group decision (`regularise`), regular
entailment relations (`entailment`), and the Grothendieck l-group of the
regularised meet-monoid (`lgroup`).  `instances` ships three worked
instances and `cli` exposes everything on the command line.

All values are immutable, all operations are pure and exact (rational
arithmetic throughout), so everything is safe to share across threads;
internal caches only ever store values that are functions of their keys.
"""

from .finsets import FinSubset, diff_set, minkowski, negate, translate
from .forcing import (
    Budget,
    ChainDepth,
    ComposeCertificate,
    TCertificate,
    UCertificate,
    Verdict,
    min_chain_depth,
    t_compose_holds,
    t_force_holds,
    u_force_holds,
)
from .groups import ConeGroup, DiscreteGroup, DivisibilityGroup, cone_membership
from .lgroup import (
    LGroupElement,
    check_cancellative,
    lg_add,
    lg_eq,
    lg_join,
    lg_leq,
    lg_meet,
    lg_neg,
    lg_sub,
    meet_monoid_leq,
    pair_element,
    phi,
    to_pair,
)
from .numberring import (
    CubicField,
    FractionalIdeal,
    hnf,
    ideal_contains,
    ideal_from_generators,
)
from .regularise import (
    ConeDecision,
    CycleCertificate,
    LorenzenCertificate,
    PruferCertificate,
    cycle_extract,
    l_holds,
    lcd_decide,
    prufer_check,
    prufer_search,
    regular_entails_decidable,
)
from .entailment import (
    ConeOrderEntailment,
    IntervalOrderEntailment,
    MeetOrderEntailment,
    RegularisedSearchEntailment,
    check_derived_lemmas,
    check_regular_axioms,
)
from .systems import (
    DedekindSystem,
    IntersectionSystem,
    MinimalSystem,
    SystemOfIdeals,
    check_system_axioms,
    dedekind_holds,
    meet_leq,
    sm_holds,
)

__version__ = "0.1.0"
