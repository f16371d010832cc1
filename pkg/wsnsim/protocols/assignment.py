"""
Member-to-head assignment rules.

``assign_nearest`` is plain LEACH: every member joins its closest head.
``assign_modified`` only lets a member join heads that sit strictly
closer to the base station than the member itself, so no report ever
travels away from the base station on its first hop; members with no
such head send straight to the base station.
"""

from typing import Dict, Iterable, List, Set, Tuple

from wsnsim.error_handlers import InvalidArgument
from wsnsim.field.models import Field
from wsnsim.field.services import bs_distances, distance


def _nearest(member: int, candidates: List[int], field: Field) -> int:
    best, best_dist = None, None
    origin = field.nodes[member]
    for head in candidates:
        d = distance(origin, field.nodes[head])
        if best is None or d < best_dist:
            best, best_dist = head, d
    return best


def assign_nearest(
    members: Iterable[int], heads: Iterable[int], field: Field
) -> Dict[int, int]:
    """
    Map every member to its closest head, ties to the lowest head id.

    Raises:
        InvalidArgument: If there is no head; such members must be
            routed as direct senders by the caller.
    """
    head_list = sorted(heads)
    if not head_list:
        raise InvalidArgument("assign_nearest needs at least one head")
    head_set = set(head_list)
    return {
        member: _nearest(member, head_list, field)
        for member in sorted(members)
        if member not in head_set
    }


def assign_modified(
    members: Iterable[int], heads: Iterable[int], field: Field
) -> Tuple[Dict[int, int], Set[int]]:
    """
    Assign members under the base-station-progress rule.

    A member's candidates are the heads strictly closer to the base
    station than the member; it joins the nearest candidate (ties to
    the lowest id) or, with none, joins the direct set.
    """
    head_list = sorted(heads)
    head_set = set(head_list)
    to_bs = bs_distances(field)
    membership: Dict[int, int] = {}
    direct: Set[int] = set()
    for member in sorted(members):
        if member in head_set:
            continue
        candidates = [h for h in head_list if to_bs[h] < to_bs[member]]
        if candidates:
            membership[member] = _nearest(member, candidates, field)
        else:
            direct.add(member)
    return membership, direct


def redundant_members(membership: Dict[int, int], field: Field) -> List[int]:
    """Members whose first hop ends farther from the base station."""
    to_bs = bs_distances(field)
    return sorted(
        member
        for member, head in membership.items()
        if to_bs[head] > to_bs[member]
    )


def modified_join_violations(
    membership: Dict[int, int],
    direct: Iterable[int],
    heads: Iterable[int],
    field: Field,
) -> List[str]:
    """
    Audit an assignment against the base-station-progress rule.

    Returns one message per violation: a member whose head is not
    strictly closer to the base station, a member not joined to the
    nearest such head, or a direct sender that had a qualifying head.
    """
    head_list = sorted(heads)
    to_bs = bs_distances(field)
    problems: List[str] = []
    for member, head in sorted(membership.items()):
        if not to_bs[head] < to_bs[member]:
            problems.append(
                f"member {member} joined head {head} which is not closer "
                "to the base station"
            )
            continue
        candidates = [h for h in head_list if to_bs[h] < to_bs[member]]
        if head != _nearest(member, candidates, field):
            problems.append(
                f"member {member} skipped a nearer qualifying head"
            )
    for sender in sorted(direct):
        if any(to_bs[h] < to_bs[sender] for h in head_list):
            problems.append(
                f"direct sender {sender} had a head closer to the base "
                "station"
            )
    return problems
