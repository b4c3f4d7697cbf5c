"""Operator command line: run the service, manipulate a local store, check
proofs offline, or drive a remote service over HTTP.

Exactly one of ``--store PATH`` (local event log) and ``--url URL`` (remote
service) may be active per invocation; ``prove check`` needs neither. Exit
codes: 0 success, 1 domain error, 2 usage error. ``--format json`` emits
one JSON object per result line on stdout; errors go to stderr prefixed
with their machine-readable code either way.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from claimgraph.errors import BadPolarityError, BadRequestError, ClaimGraphError
from claimgraph.formula import parse_formula, print_formula
from claimgraph.kernel import DEFAULT_ATOM_CAP, entails
from claimgraph.linear import import_linear_proof, parse_linear_proof
from claimgraph.proofgraph import Role
from claimgraph.query import best_arguments
from claimgraph.store import (
    CommentEdge,
    MessageStore,
    Polarity,
    PropositionPayload,
    ProofPayload,
)

_POLARITY_ARG = {"1": Polarity.AGREE, "0": Polarity.DISAGREE,
                 "null": Polarity.NO_OPINION}


class _RemoteError(ClaimGraphError):
    """Error body relayed from a remote service; keeps its code."""

    def __init__(self, code: str, message: str, field: Optional[str]):
        super().__init__(message, field=field)
        self.code = code


class RemoteBackend:
    def __init__(self, base_url: str):
        import requests

        self._requests = requests
        self.base = base_url.rstrip("/")

    def _check(self, response) -> dict:
        try:
            body = response.json()
        except ValueError:
            response.raise_for_status()
            raise _RemoteError("bad_response", "service returned non-JSON", None)
        if response.status_code >= 400:
            err = body.get("error", {})
            raise _RemoteError(err.get("code", "error"),
                               err.get("message", response.text),
                               err.get("field"))
        return body

    def get(self, path: str, **params) -> dict:
        clean = {k: v for k, v in params.items() if v is not None}
        return self._check(self._requests.get(self.base + path, params=clean,
                                              timeout=30))

    def post(self, path: str, payload: dict) -> dict:
        return self._check(self._requests.post(self.base + path, json=payload,
                                               timeout=30))

    def post_text(self, path: str, text: str, **params) -> dict:
        return self._check(self._requests.post(
            self.base + path, params=params, data=text.encode("utf-8"),
            headers={"content-type": "text/plain"}, timeout=30,
        ))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="claimgraph",
        description="claim graph platform: post, rate, query, and check proofs",
    )
    parser.add_argument("--store", metavar="PATH", help="local event log path")
    parser.add_argument("--url", metavar="URL", help="remote service base URL")
    parser.add_argument("--format", choices=("plain", "json"), default="plain")
    parser.add_argument("--admins", metavar="IDS", default="",
                        help="comma-separated admin user ids for local admin ops")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--atom-cap", type=int, default=DEFAULT_ATOM_CAP)
    serve.add_argument("--ui-dir", metavar="DIR", default=None,
                       help="serve a static UI from this directory under /ui")

    user = sub.add_parser("user", help="manage users")
    user_sub = user.add_subparsers(dest="user_command", required=True)
    user_add = user_sub.add_parser("add")
    user_add.add_argument("handle")

    post = sub.add_parser("post", help="post a message")
    post.add_argument("--author", type=int, required=True)
    post.add_argument("--body", default="")
    post.add_argument("--kind", choices=("plain", "prop", "proof"),
                      default="plain")
    post.add_argument("--formula", help="proposition formula (kind prop)")
    post.add_argument("--role", choices=("data", "explanatory"))
    post.add_argument("--premise", type=int, action="append", default=None,
                      help="premise message id (kind proof, repeatable)")
    post.add_argument("--truism", action="append", default=None,
                      help="inline axiom instance (kind proof, repeatable)")
    post.add_argument("--conclusion", help="derived formula (kind proof)")
    post.add_argument("--target", type=int, help="comment on this message")
    post.add_argument("--polarity", choices=("1", "0", "null"),
                      help="agreement polarity, required with --target")

    rate = sub.add_parser("rate", help="rate a message's hotness")
    rate.add_argument("--user", type=int, required=True)
    rate.add_argument("--msg", type=int, required=True)
    rate.add_argument("--score", type=float, required=True)

    auth = sub.add_parser("auth", help="set a user's authoritative flag")
    auth.add_argument("--admin", type=int, required=True)
    auth.add_argument("--user", type=int, required=True)
    auth.add_argument("--flag", choices=("true", "false"), required=True)

    args_cmd = sub.add_parser("args", help="best arguments for/against a message")
    args_cmd.add_argument("--target", type=int, required=True)
    args_cmd.add_argument("--polarity", choices=("1", "0", "null"),
                          required=True)
    args_cmd.add_argument("--limit", type=int, default=None)

    prove = sub.add_parser("prove", help="check or import linear proofs")
    prove_sub = prove.add_subparsers(dest="prove_command", required=True)
    check = prove_sub.add_parser("check", help="verify a linear proof file")
    check.add_argument("file")
    check.add_argument("--oracle", action="store_true",
                       help="also confirm entailment by truth table")
    check.add_argument("--atom-cap", type=int, default=DEFAULT_ATOM_CAP)
    imp = prove_sub.add_parser("import", help="post a proof file as messages")
    imp.add_argument("file")
    imp.add_argument("--author", type=int, required=True)
    imp.add_argument("--role", choices=("data", "explanatory"),
                     default="explanatory")

    theory = sub.add_parser("theory", help="manage and check theories")
    theory_sub = theory.add_subparsers(dest="theory_command", required=True)
    theory_add = theory_sub.add_parser("add")
    theory_add.add_argument("--name", required=True)
    theory_add.add_argument("--member", type=int, action="append",
                            required=True)
    theory_check = theory_sub.add_parser("check")
    theory_check.add_argument("theory_id", type=int)

    sub.add_parser("replay", help="replay a local event log and summarize")
    return parser


def _emit(ns: argparse.Namespace, record: dict, plain: str) -> None:
    if ns.format == "json":
        print(json.dumps(record, separators=(",", ":")))
    else:
        print(plain)


def _emit_rows(ns: argparse.Namespace, records: list[dict],
               plain_rows: list[str]) -> None:
    if ns.format == "json":
        for record in records:
            print(json.dumps(record, separators=(",", ":")))
    else:
        for row in plain_rows:
            print(row)


def _parse_admins(text: str) -> frozenset[int]:
    return frozenset(int(x) for x in text.split(",") if x.strip())


def _open_store(ns: argparse.Namespace) -> MessageStore:
    return MessageStore(ns.store, admin_ids=_parse_admins(ns.admins))


def _build_payload(ns: argparse.Namespace):
    if ns.kind == "prop":
        if ns.formula is None:
            raise BadRequestError("--formula required for kind prop",
                                  field="formula")
        role = Role(ns.role) if ns.role else Role.EXPLANATORY
        return PropositionPayload(parse_formula(ns.formula), role)
    if ns.kind == "proof":
        if ns.conclusion is None:
            raise BadRequestError("--conclusion required for kind proof",
                                  field="conclusion")
        return ProofPayload(
            tuple(ns.premise or ()),
            tuple(parse_formula(t) for t in (ns.truism or ())),
            parse_formula(ns.conclusion),
        )
    return None


def _run_prove_check(ns: argparse.Namespace) -> int:
    text = Path(ns.file).read_text(encoding="utf-8")
    fragment = import_linear_proof(parse_linear_proof(text))
    report = fragment.verify()
    record: dict = {
        "valid": report.valid,
        "conclusion": print_formula(report.conclusion),
        "hypotheses": [print_formula(h) for h in report.hypotheses],
    }
    if not report.valid:
        bad = [v for v in report.verdicts if not v.valid]
        record["failures"] = [
            {"node": v.node_id, "reason": v.reason, "detail": v.detail}
            for v in bad
        ]
        detail = "; ".join(f"node {v.node_id}: {v.reason}" for v in bad)
        _emit(ns, record, f"invalid: {detail}")
        return 1
    if ns.oracle:
        record["entailed"] = entails(
            list(report.hypotheses), report.conclusion, atom_cap=ns.atom_cap
        )
        if not record["entailed"]:
            _emit(ns, record, "valid but not entailed (kernel bug?)")
            return 1
    plain = f"valid, conclusion: {record['conclusion']}"
    if record["hypotheses"]:
        plain += " | hypotheses: " + ", ".join(record["hypotheses"])
    if ns.oracle:
        plain += " | entailed"
    _emit(ns, record, plain)
    return 0


def _print_listing(ns: argparse.Namespace, listing: dict) -> None:
    rows = []
    for entry in listing["entries"]:
        flag = "auth" if entry["authoritative"] else "-"
        rows.append(f"{entry['id']} {entry['hotness']:g} {flag}")
    _emit_rows(ns, listing["entries"], rows)


def _run_local(ns: argparse.Namespace) -> int:
    from claimgraph.service import (
        argument_record,
        consistency_record,
        import_proof_messages,
    )

    with _open_store(ns) as store:
        if ns.command == "user":
            user_id = store.add_user(ns.handle)
            _emit(ns, {"id": user_id}, str(user_id))
        elif ns.command == "post":
            comment = None
            if ns.target is not None:
                if ns.polarity is None:
                    raise BadPolarityError("--polarity required with --target",
                                           field="polarity")
                comment = CommentEdge(ns.target, _POLARITY_ARG[ns.polarity])
            elif ns.polarity is not None:
                raise BadPolarityError("--polarity requires --target",
                                       field="target")
            message_id = store.post_message(ns.author, ns.body,
                                            _build_payload(ns), comment)
            _emit(ns, {"id": message_id}, str(message_id))
        elif ns.command == "rate":
            store.rate_hotness(ns.user, ns.msg, ns.score)
            _emit(ns, {"ok": True}, "ok")
        elif ns.command == "auth":
            store.set_authoritative(ns.admin, ns.user, ns.flag == "true")
            _emit(ns, {"ok": True}, "ok")
        elif ns.command == "args":
            listing = argument_record(best_arguments(
                store.snapshot(), ns.target, _POLARITY_ARG[ns.polarity],
                ns.limit,
            ))
            _print_listing(ns, listing)
        elif ns.command == "prove":
            text = Path(ns.file).read_text(encoding="utf-8")
            result = import_proof_messages(store, text, ns.author,
                                           Role(ns.role))
            _emit(ns, result, str(result["root_id"]))
        elif ns.command == "theory":
            if ns.theory_command == "add":
                theory_id = store.add_theory(ns.name, ns.member)
                _emit(ns, {"id": theory_id}, str(theory_id))
            else:
                record = consistency_record(store.snapshot(), ns.theory_id)
                witness = record["witness"]
                plain = record["status"] if witness is None else \
                    f"{record['status']}: {witness[0]} / {witness[1]}"
                _emit(ns, record, plain)
        elif ns.command == "replay":
            snapshot = store.snapshot()
            record = {
                "users": len(snapshot.users),
                "messages": len(snapshot.messages),
                "ratings": len(snapshot.ratings),
                "theories": len(snapshot.theories),
            }
            plain = (f"{record['users']} users, {record['messages']} messages, "
                     f"{record['ratings']} ratings, {record['theories']} theories")
            _emit(ns, record, plain)
    return 0


def _run_remote(ns: argparse.Namespace) -> int:
    remote = RemoteBackend(ns.url)
    if ns.command == "user":
        result = remote.post("/users", {"handle": ns.handle})
        _emit(ns, result, str(result["id"]))
    elif ns.command == "post":
        payload: dict = {"author": ns.author, "body": ns.body, "kind": ns.kind}
        for key in ("formula", "role", "conclusion", "target"):
            value = getattr(ns, key)
            if value is not None:
                payload[key] = value
        if ns.premise is not None or ns.kind == "proof":
            payload["premises"] = ns.premise or []
        if ns.truism is not None or ns.kind == "proof":
            payload["truisms"] = ns.truism or []
        if ns.target is not None:
            if ns.polarity is None:
                raise BadPolarityError("--polarity required with --target",
                                       field="polarity")
            payload["polarity"] = _POLARITY_ARG[ns.polarity].wire()
        elif ns.polarity is not None:
            raise BadPolarityError("--polarity requires --target", field="target")
        result = remote.post("/messages", payload)
        _emit(ns, result, str(result["id"]))
    elif ns.command == "rate":
        remote.post("/ratings", {"user": ns.user, "msg": ns.msg,
                                 "score": ns.score})
        _emit(ns, {"ok": True}, "ok")
    elif ns.command == "auth":
        remote.post("/admin/authoritative",
                    {"admin": ns.admin, "user": ns.user,
                     "flag": ns.flag == "true"})
        _emit(ns, {"ok": True}, "ok")
    elif ns.command == "args":
        listing = remote.get("/arguments", target=ns.target,
                             polarity=ns.polarity, limit=ns.limit)
        _print_listing(ns, listing)
    elif ns.command == "prove":
        text = Path(ns.file).read_text(encoding="utf-8")
        result = remote.post_text("/proofs/import", text, author=ns.author,
                                  role=ns.role)
        _emit(ns, result, str(result["root_id"]))
    elif ns.command == "theory":
        if ns.theory_command == "add":
            result = remote.post("/theories", {"name": ns.name,
                                               "members": ns.member})
            _emit(ns, result, str(result["id"]))
        else:
            record = remote.get(f"/theories/{ns.theory_id}/consistency")
            witness = record["witness"]
            plain = record["status"] if witness is None else \
                f"{record['status']}: {witness[0]} / {witness[1]}"
            _emit(ns, record, plain)
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)

    if ns.store and ns.url:
        parser.error("--store and --url are mutually exclusive")
    if ns.command == "serve":
        if ns.url:
            parser.error("serve runs locally; --url makes no sense here")
        from claimgraph.service import ServiceConfig, serve

        serve(ServiceConfig(
            port=ns.port, host=ns.host,
            log_path=Path(ns.store) if ns.store else None,
            admin_ids=_parse_admins(ns.admins),
            atom_cap=ns.atom_cap,
            ui_dir=Path(ns.ui_dir) if ns.ui_dir else None,
        ))
        return 0

    try:
        if ns.command == "prove" and ns.prove_command == "check":
            return _run_prove_check(ns)
        if ns.command == "replay" and ns.url:
            parser.error("replay works on a local --store log")
        if ns.url:
            return _run_remote(ns)
        if ns.command != "replay" and ns.store is None and ns.command in (
                "args", "theory", "rate", "auth", "post", "user", "prove"):
            # a transient in-memory store would discard the write immediately
            parser.error("pick --store PATH or --url URL for this command")
        if ns.command == "replay" and ns.store is None:
            parser.error("replay needs --store PATH")
        return _run_local(ns)
    except ClaimGraphError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
