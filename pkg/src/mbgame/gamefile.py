"""JSON game-spec files and report rendering.

Game file (schema_version 1)::

    {
      "schema_version": 1,
      "players": {"m": 3, "labels": ["1", "2", "3"]},        # labels optional
      "groups": [1, 2]            # sizes of contiguous groups, or
                                  # [[1], [3, 2]]: member lists (1-based, any order)
      "types": {"e": 2, "labels": [[100, 110], ...]},        # labels optional
      "actions": {"g": 2, "labels": [[57, 68], ...]},        # labels optional
      "prior": ["0.125", ...],    # length e**m, lexicographic, decimal strings or numbers
      "payoffs": [[...], ...]     # m rows of (e*g)**m entries, or the string "auction"
      "auction": {"evaluations": [[...]], "bids": [[...]], "tie_rule": "error"}
    }

With ``"payoffs": "auction"`` the payoffs are generated by the first-price
rule from the ``auction`` block (whose evaluations and bids also serve as
type and action labels).
"""

from __future__ import annotations

import copy
import json
from decimal import Decimal, InvalidOperation
from pathlib import Path

import numpy as np

from mbgame.equilibrium import EquilibriumReport
from mbgame.fixtures import EXAMPLE4, TIE_RULES, auction_payoffs
from mbgame.meag import StrategyProfile, gamma
from mbgame.model import MbgSpec, SpecError, permute_players
from mbgame.stp import lex_decode

SCHEMA_VERSION = 1
VECTOR_LIMIT = 4096


class GameFileError(ValueError):
    """The file cannot be read or parsed (as opposed to describing an invalid game)."""


def _fmt(x: float) -> float | int:
    x = float(f"{float(x):.12g}")
    return int(x) if x.is_integer() and abs(x) < 2**53 else x


def _fmt_value(x: float) -> float | int:
    """Potential values: fixed 10 decimals so solver noise does not leak into reports."""
    return _fmt(round(float(x), 10) + 0.0)


def _parse_number(v, where: str) -> float:
    if isinstance(v, bool):
        raise SpecError(f"{where}: expected a number, got {v!r}")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        try:
            return float(Decimal(v))
        except InvalidOperation:
            raise SpecError(f"{where}: {v!r} is not a decimal number") from None
    raise SpecError(f"{where}: expected a number, got {type(v).__name__}")


def parse_game(doc: dict) -> MbgSpec:
    """Build an :class:`MbgSpec` from a decoded JSON document.

    Raises :class:`SpecError` for structurally invalid content. Numeric
    invariants (normalisation, shapes) are left to :func:`mbgame.model.validate`.
    """
    if not isinstance(doc, dict):
        raise SpecError("top level must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SpecError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")

    auction = doc.get("auction")
    payoffs = doc.get("payoffs")
    if (payoffs == "auction") != (auction is not None):
        raise SpecError('use either "payoffs": "auction" with an "auction" block, or a payoff matrix')

    groups = doc.get("groups")
    if not isinstance(groups, list) or not groups:
        raise SpecError('"groups" must be a non-empty list')
    members = None
    if all(isinstance(x, list) for x in groups):
        members = groups
        sizes = [len(x) for x in groups]
    elif all(isinstance(x, int) and not isinstance(x, bool) for x in groups):
        sizes = groups
    else:
        raise SpecError('"groups" must list group sizes or member lists')
    m = sum(sizes)

    players = doc.get("players", {})
    if "m" in players and players["m"] != m:
        raise SpecError(f'players.m = {players["m"]} but groups cover {m} players')

    types = doc.get("types", {})
    actions = doc.get("actions", {})
    if auction is not None:
        ev, bids = auction.get("evaluations"), auction.get("bids")
        if not isinstance(ev, list) or not isinstance(bids, list) or len(ev) != m or len(bids) != m:
            raise SpecError("auction block needs one evaluation list and one bid list per player")
        if len({len(v) for v in ev}) != 1 or len({len(b) for b in bids}) != 1:
            raise SpecError("heterogeneous type/action counts are not supported")
        tie_rule = auction.get("tie_rule", "error")
        if tie_rule not in TIE_RULES:
            raise SpecError(f"tie_rule must be one of {TIE_RULES}")
        ev = [[_parse_number(x, "auction.evaluations") for x in v] for v in ev]
        bids = [[_parse_number(x, "auction.bids") for x in b] for b in bids]
        e, g = len(ev[0]), len(bids[0])
        C = auction_payoffs(ev, bids, tie_rule)
        type_labels, action_labels = auction["evaluations"], auction["bids"]
    else:
        e, g = types.get("e"), actions.get("g")
        if not isinstance(e, int) or not isinstance(g, int):
            raise SpecError('"types.e" and "actions.g" must be integers')
        if not isinstance(payoffs, list) or not all(isinstance(row, list) for row in payoffs):
            raise SpecError('"payoffs" must be a list of rows')
        C = [[_parse_number(x, f"payoffs[{i}]") for x in row] for i, row in enumerate(payoffs)]
        widths = {len(row) for row in C}
        if len(C) != m or len(widths) != 1:
            raise SpecError(f"payoff shape: expected {m} rows of equal length")
        C = np.array(C)
        type_labels, action_labels = types.get("labels"), actions.get("labels")

    prior_raw = doc.get("prior")
    if not isinstance(prior_raw, list):
        raise SpecError('"prior" must be a list')
    prior = np.array([_parse_number(x, "prior") for x in prior_raw])

    player_labels = players.get("labels")
    if members is not None:
        if prior.size != e**m or C.shape[1] != (e * g) ** m:
            raise SpecError("prior/payoff shape does not match groups, e and g")
        sizes, prior, C, order = permute_players(members, e, g, prior, C)
        reorder = lambda xs: None if xs is None else [xs[i - 1] for i in order]  # noqa: E731
        player_labels = reorder(player_labels) or [str(i) for i in order]
        type_labels, action_labels = reorder(type_labels), reorder(action_labels)

    labels = {
        k: v
        for k, v in (("players", player_labels), ("types", type_labels), ("actions", action_labels))
        if v is not None
    }
    return MbgSpec(tuple(sizes), e, g, prior, C, labels or None)


def load_game(path) -> MbgSpec:
    return load_game_with_meta(path)[0]


def load_game_with_meta(path) -> tuple[MbgSpec, dict | None]:
    """Like :func:`load_game`, also returning the file's ``generator`` block (seed etc.) if any."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GameFileError(f"{path}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise GameFileError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {context}"
        ) from exc
    spec = parse_game(doc)
    gen = doc.get("generator")
    return spec, gen if isinstance(gen, dict) else None


def game_document(spec: MbgSpec) -> dict:
    labels = spec.labels or {}
    doc = {
        "schema_version": SCHEMA_VERSION,
        "players": {"m": spec.m},
        "groups": list(spec.group_sizes),
        "types": {"e": spec.e},
        "actions": {"g": spec.g},
        "prior": [repr(float(p)) for p in spec.prior],
        "payoffs": [[_fmt(x) for x in row] for row in spec.payoffs],
    }
    if "players" in labels:
        doc["players"]["labels"] = labels["players"]
    if "types" in labels:
        doc["types"]["labels"] = labels["types"]
    if "actions" in labels:
        doc["actions"]["labels"] = labels["actions"]
    return doc


def example4_document() -> dict:
    return copy.deepcopy({
        "schema_version": SCHEMA_VERSION,
        "players": {"m": 3, "labels": ["bidder 1", "bidder 2", "bidder 3"]},
        "groups": EXAMPLE4["groups"],
        "prior": EXAMPLE4["prior"],
        "payoffs": "auction",
        "auction": {
            "evaluations": EXAMPLE4["evaluations"],
            "bids": EXAMPLE4["bids"],
            "tie_rule": "error",
        },
    })


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# --- reports -------------------------------------------------------------


def _group_action_label(spec: MbgSpec, l: int, action: int) -> str:
    """``A_lj`` plus the members' individual actions when labels are known."""
    name = f"A_{l}{action}"
    acts = (spec.labels or {}).get("actions")
    if acts is None:
        return name
    members = list(spec.members(l))
    digits = lex_decode(action, [spec.g] * len(members))
    return name + "=(" + ",".join(str(acts[i - 1][d - 1]) for i, d in zip(members, digits)) + ")"


def strategy_document(spec: MbgSpec, s: StrategyProfile) -> dict:
    return {
        "alpha": gamma(s, spec.layout),
        "groups": [
            {f"T_{l}{k}": _group_action_label(spec, l, a) for k, a in enumerate(acts, start=1)}
            for l, acts in enumerate(s.actions, start=1)
        ],
    }


def report_document(
    spec: MbgSpec, rep: EquilibriumReport, generator: dict | None = None, force_vector: bool = False
) -> dict:
    layout = spec.layout
    doc = {
        "schema_version": SCHEMA_VERSION,
        "mode": rep.mode,
        "layout": {
            "group_sizes": list(spec.group_sizes),
            "radices": list(layout.radices),
            "htilde": layout.htilde,
        },
        "potential": {
            "solvable": rep.potential_solvable,
            "relative_residual": _fmt(rep.residual),
            "tol": rep.diagnostics.get("tol"),
            "payoff_route": rep.diagnostics.get("method"),
        },
        "argmax": [],
    }
    if rep.potential_solvable:
        pot = doc["potential"]
        pot["max_raw"] = _fmt_value(rep.potential_max)
        pot["max_normalized"] = _fmt_value(rep.potential_max - rep.L_F[0])
        pot["verify_max_violation"] = _fmt(rep.verify_violation)
        pot["tie_tol"] = rep.diagnostics.get("tie_tol")
        if force_vector or layout.htilde <= VECTOR_LIMIT:
            pot["normalized_vector"] = [_fmt_value(x) for x in rep.normalized_potential]
        doc["argmax"] = [strategy_document(spec, s) for s in rep.argmax_strategies]
    if rep.oracle_ne_profiles is not None:
        doc["oracle"] = {
            "ne_profiles": list(rep.oracle_ne_profiles),
            "mbne": [strategy_document(spec, s) for s in rep.mbne_strategies],
            "correspondence_ok": rep.correspondence_ok,
            "argmax_subset_of_ne": rep.soundness_ok,
            "non_maximal_equilibria": list(rep.non_maximal_equilibria),
        }
    if generator is not None:
        doc["generator"] = generator
    return doc


def oracle_document(spec: MbgSpec, mode: str, ne, mbne, generator: dict | None = None) -> dict:
    layout = spec.layout
    doc = {
        "schema_version": SCHEMA_VERSION,
        "mode": mode,
        "layout": {
            "group_sizes": list(spec.group_sizes),
            "radices": list(layout.radices),
            "htilde": layout.htilde,
        },
        "oracle": {
            "ne_profiles": list(ne),
            "mbne": [strategy_document(spec, s) for s in mbne],
            "correspondence_ok": tuple(sorted(gamma(s, layout) for s in mbne)) == tuple(ne),
        },
    }
    if generator is not None:
        doc["generator"] = generator
    return doc


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[j]) for r in rows)) if rows else len(h) for j, h in enumerate(headers)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
    out = [line(headers), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return "\n".join(out)


def _strategy_rows(entries: list[dict], values: dict | None = None) -> list[list[str]]:
    rows = []
    for ent in entries:
        cells = [str(ent["alpha"])]
        cells += ["; ".join(f"{t}->{a}" for t, a in grp.items()) for grp in ent["groups"]]
        if values is not None:
            cells.append(values.get(ent["alpha"], ""))
        rows.append(cells)
    return rows


def report_text(doc: dict) -> str:
    n_groups = len(doc["layout"]["group_sizes"])
    lines = [
        f"mode: {doc['mode']}   htilde: {doc['layout']['htilde']}   "
        f"agent radices: {doc['layout']['radices']}"
    ]
    pot = doc.get("potential")
    if pot is not None:
        verdict = "potential" if pot["solvable"] else "NOT potential"
        lines.append(f"verdict: {verdict} (relative residual {pot['relative_residual']:.3e})")
        if pot["solvable"]:
            lines.append(
                f"potential max: {pot['max_normalized']} (normalized), {pot['max_raw']} (min-norm)"
            )
            vec = pot.get("normalized_vector")
            values = None
            if vec is not None:
                values = {e["alpha"]: f"{vec[e['alpha'] - 1]:.6g}" for e in doc["argmax"]}
            headers = ["alpha"] + [f"group {l}" for l in range(1, n_groups + 1)]
            if values is not None:
                headers.append("F-F(1)")
            lines += ["", "maximisers of the potential:", _table(headers, _strategy_rows(doc["argmax"], values))]
    orc = doc.get("oracle")
    if orc is not None:
        headers = ["alpha"] + [f"group {l}" for l in range(1, n_groups + 1)]
        lines += [
            "",
            f"brute-force equilibria: {len(orc['ne_profiles'])} "
            f"(correspondence {'ok' if orc['correspondence_ok'] else 'BROKEN'})",
            _table(headers, _strategy_rows(orc["mbne"])),
        ]
        if orc.get("non_maximal_equilibria"):
            lines.append(f"equilibria that do not maximise the potential: {orc['non_maximal_equilibria']}")
    return "\n".join(lines) + "\n"
