"""`honor` command line tool.

A thin client over the HTTP API: every state-changing verb calls the same
endpoint the committee console uses, so both paths produce identical stored
records. Two commands run locally without a server: ``serve`` (starts the
service) and ``replay`` (pure file transformation of an event log into a
snapshot). ``seal`` is a helper that appends the checksum line adapters must
write at the end of event files.

Server address comes from --addr or HONOR_ADDR; the bearer token from
--token or HONOR_TOKEN; the data directory for ``serve`` from --data or
HONOR_DATA_DIR.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import httpx

from . import records
from .config import load_scoring_config
from .errors import BadChecksum, HonorError

DEFAULT_ADDR = "http://127.0.0.1:8700"


def _print(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))


class RemoteError(Exception):
    pass


class Client:
    def __init__(self, addr: str, token: str | None):
        self.addr = addr.rstrip("/")
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        self.http = httpx.Client(base_url=self.addr, headers=headers, timeout=30.0)

    def call(self, method: str, path: str, **kwargs):
        response = self.http.request(method, path, **kwargs)
        if response.status_code >= 400:
            try:
                detail = response.json()
            except ValueError:
                detail = {"detail": response.text}
            raise RemoteError(f"error {response.status_code}: {json.dumps(detail, sort_keys=True)}")
        return response


def read_record_file(path: str, require_checksum: bool = False) -> list[dict]:
    """Read a line-oriented record file.

    Event files must end with the checksum line (``require_checksum=True``);
    registry bootstrap files may omit it. A present checksum is always
    verified.
    """
    text = Path(path).read_text(encoding="utf-8")
    stripped = [l for l in text.splitlines() if l.strip()]
    if stripped and stripped[-1].startswith(records.CHECKSUM_PREFIX):
        lines, _ = records.split_sealed(text)
    elif require_checksum:
        raise BadChecksum(f"{path}: event files need a trailing checksum line (try `honor seal`)")
    else:
        lines = [l + "\n" for l in stripped]
    return [records.parse_record_line(line) for line in lines if line.strip()]


def cmd_serve(args) -> int:
    import uvicorn

    from .awards import load_catalog
    from .engine import Engine
    from .service.app import create_app, load_tokens

    data_dir = args.data or os.environ.get("HONOR_DATA_DIR")
    if not data_dir:
        print("serve needs --data or HONOR_DATA_DIR", file=sys.stderr)
        return 2
    scoring = load_scoring_config(Path(args.config)) if args.config else None
    catalog = load_catalog(Path(args.catalog)) if args.catalog else None
    engine = Engine(Path(data_dir), scoring=scoring, catalog=catalog)
    tokens = load_tokens(Path(args.token_file)) if args.token_file else {}
    app = create_app(engine, tokens)
    host, _, port = args.addr.rpartition(":")
    host = host.replace("http://", "").replace("https://", "").strip("/") or "127.0.0.1"
    uvicorn.run(app, host=host, port=int(port))
    return 0


def cmd_replay(args) -> int:
    from .events import replay

    scoring = load_scoring_config(Path(args.config)) if args.config else None
    snapshot = replay(Path(args.log), scoring)
    data = snapshot.to_canonical_bytes()
    if args.out:
        records.write_atomic(Path(args.out), data)
        print(f"replayed {snapshot.event_count} events from {args.log} -> {args.out}")
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def cmd_seal(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    lines = [l + "\n" for l in text.splitlines() if l.strip() and not l.startswith(records.CHECKSUM_PREFIX)]
    records.write_atomic(Path(args.file), records.seal_lines(lines).encode("utf-8"))
    print(f"sealed {args.file} ({len(lines)} records)")
    return 0


def _write_or_print(args, response) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_bytes(response.content)
        print(f"wrote {args.out}")
    else:
        _print(response.json())


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="honor", description=__doc__)
    parser.add_argument("--addr", default=os.environ.get("HONOR_ADDR", DEFAULT_ADDR))
    parser.add_argument("--token", default=os.environ.get("HONOR_TOKEN"))
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--data", help="data directory (or HONOR_DATA_DIR)")
    p_serve.add_argument("--token-file", help="static token file")
    p_serve.add_argument("--config", help="scoring config file")
    p_serve.add_argument("--catalog", help="award catalog override file")
    p_serve.set_defaults(func=cmd_serve)

    p_org = sub.add_parser("org", help="registry operations")
    org_sub = p_org.add_subparsers(dest="org_command", required=True)
    p = org_sub.add_parser("import", help="register entities from a bootstrap file")
    p.add_argument("file")
    p.set_defaults(org_action="import")
    p = org_sub.add_parser("show", help="look up one entity")
    p.add_argument("kind", choices=["contributor", "department", "project", "committee"])
    p.add_argument("id")
    p.set_defaults(org_action="show")
    p = org_sub.add_parser("phase", help="advance a project's lifecycle phase")
    p.add_argument("project_id")
    p.add_argument("phase", choices=["Incubation", "Graduation"])
    p.set_defaults(org_action="phase")
    p = org_sub.add_parser("pmc", help="set a project's PMC membership")
    p.add_argument("project_id")
    p.add_argument("member_ids", nargs="+")
    p.set_defaults(org_action="pmc")

    p = sub.add_parser("ingest", help="submit event files")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("replay", help="fold an event log into a snapshot locally")
    p.add_argument("--log", required=True)
    p.add_argument("--out")
    p.add_argument("--config")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("seal", help="append the checksum line to a record file")
    p.add_argument("file")
    p.set_defaults(func=cmd_seal)

    p_score = sub.add_parser("score", help="ledger operations")
    score_sub = p_score.add_subparsers(dest="score_command", required=True)
    score_sub.add_parser("recompute", help="rebuild the snapshot and report totals")

    p_board = sub.add_parser("leaderboard", help="leaderboard")
    board_sub = p_board.add_subparsers(dest="board_command", required=True)
    p = board_sub.add_parser("top", help="top N contributors")
    p.add_argument("n", type=int)

    p_role = sub.add_parser("role", help="role progression")
    role_sub = p_role.add_subparsers(dest="role_command", required=True)
    p = role_sub.add_parser("propose")
    p.add_argument("contributor_id")
    p.add_argument("project_id")
    p.add_argument("new_role", choices=["Committer", "Maintainer", "PMCMember"])
    p.add_argument("--by", required=True, dest="proposed_by")
    p = role_sub.add_parser("vote")
    p.add_argument("proposal_id")
    p.add_argument("--voter", required=True)
    p.add_argument("--approve", action="store_true")
    p.add_argument("--reject", action="store_true")

    p_mat = sub.add_parser("maturity", help="project maturity")
    mat_sub = p_mat.add_subparsers(dest="maturity_command", required=True)
    p = mat_sub.add_parser("assess")
    p.add_argument("project_id")
    p.add_argument("--period", required=True)
    p.add_argument("--levels", required=True, help='JSON, e.g. {"Transparency":2,...}')
    p.add_argument("--evidence", default="{}", help="JSON notes per dimension")
    p = mat_sub.add_parser("rank")
    p.add_argument("--period", required=True)

    p_cycle = sub.add_parser("cycle", help="award cycles")
    cycle_sub = p_cycle.add_subparsers(dest="cycle_command", required=True)
    for verb in ("open", "slate", "show"):
        p = cycle_sub.add_parser(verb)
        p.add_argument("kind")
        p.add_argument("period")
    p = cycle_sub.add_parser("decide")
    p.add_argument("kind")
    p.add_argument("period")
    p.add_argument("--recipients", required=True, help="JSON list of {recipient_id, rank?, rationale?}")
    p.add_argument("--by", required=True, dest="decided_by", help="comma-separated committee member ids")
    p = cycle_sub.add_parser("finalize")
    p.add_argument("kind")
    p.add_argument("period")
    p.add_argument("--pool", type=int)

    p_budget = sub.add_parser("budget", help="budget reporting")
    budget_sub = p_budget.add_subparsers(dest="budget_command", required=True)
    p = budget_sub.add_parser("report")
    p.add_argument("--year", required=True)

    p_wall = sub.add_parser("wall", help="wall of honor")
    wall_sub = p_wall.add_subparsers(dest="wall_command", required=True)
    p = wall_sub.add_parser("show")
    p.add_argument("--as-of", dest="as_of")
    p.add_argument("--out")
    p = wall_sub.add_parser("profile")
    p.add_argument("contributor_id")
    p.add_argument("--as-of", dest="as_of")
    p.add_argument("--out")

    args = parser.parse_args(argv)

    if hasattr(args, "func"):
        try:
            return args.func(args)
        except HonorError as exc:
            print(f"error {exc.code}: {exc}", file=sys.stderr)
            return 1
        except FileNotFoundError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1

    client = Client(args.addr, args.token)
    try:
        return _dispatch_remote(client, args)
    except HonorError as exc:
        print(f"error {exc.code}: {exc}", file=sys.stderr)
        return 1
    except RemoteError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except httpx.HTTPError as exc:
        print(f"error: cannot reach {args.addr}: {exc}", file=sys.stderr)
        return 1


def _dispatch_remote(client: Client, args) -> int:
    if args.command == "org":
        if args.org_action == "import":
            body = {"records": read_record_file(args.file)}
            _print(client.call("POST", "/org/entities", json=body).json())
        elif args.org_action == "show":
            _print(client.call("GET", f"/org/{args.kind}/{args.id}").json())
        elif args.org_action == "phase":
            _print(
                client.call(
                    "POST", f"/org/projects/{args.project_id}/phase", json={"phase": args.phase}
                ).json()
            )
        else:
            _print(
                client.call(
                    "POST",
                    f"/org/projects/{args.project_id}/pmc",
                    json={"member_ids": args.member_ids},
                ).json()
            )
    elif args.command == "ingest":
        for path in args.files:
            body = {
                "records": read_record_file(path, require_checksum=True),
                "source": Path(path).name,
            }
            print(f"{path}:")
            _print(client.call("POST", "/events/ingest", json=body).json())
    elif args.command == "score":
        _print(client.call("POST", "/score/recompute").json())
    elif args.command == "leaderboard":
        _print(client.call("GET", "/leaderboard", params={"top": args.n}).json())
    elif args.command == "role":
        if args.role_command == "propose":
            body = {
                "contributor_id": args.contributor_id,
                "project_id": args.project_id,
                "new_role": args.new_role,
                "proposed_by": args.proposed_by,
            }
            _print(client.call("POST", "/roles/proposals", json=body).json())
        else:
            if args.approve == args.reject:
                print("vote needs exactly one of --approve / --reject", file=sys.stderr)
                return 2
            body = {"voter_id": args.voter, "approve": args.approve}
            _print(
                client.call("POST", f"/roles/proposals/{args.proposal_id}/votes", json=body).json()
            )
    elif args.command == "maturity":
        if args.maturity_command == "assess":
            body = {
                "project_id": args.project_id,
                "period": args.period,
                "levels": json.loads(args.levels),
                "evidence": json.loads(args.evidence),
            }
            _print(client.call("POST", "/maturity/assessments", json=body).json())
        else:
            _print(client.call("GET", f"/maturity/{args.period}").json())
    elif args.command == "cycle":
        if args.cycle_command == "open":
            _print(
                client.call("POST", "/cycles", json={"kind": args.kind, "period": args.period}).json()
            )
        elif args.cycle_command == "slate":
            _print(client.call("POST", f"/cycles/{args.kind}/{args.period}/slate").json())
        elif args.cycle_command == "show":
            _print(client.call("GET", f"/cycles/{args.kind}/{args.period}").json())
        elif args.cycle_command == "decide":
            body = {
                "recipients": json.loads(args.recipients),
                "decided_by": [m.strip() for m in args.decided_by.split(",") if m.strip()],
            }
            _print(client.call("POST", f"/cycles/{args.kind}/{args.period}/decisions", json=body).json())
        else:
            body = {"pool": args.pool}
            _print(client.call("POST", f"/cycles/{args.kind}/{args.period}/finalize", json=body).json())
    elif args.command == "budget":
        _print(client.call("GET", f"/report/{args.year}").json())
    elif args.command == "wall":
        if args.wall_command == "show":
            params = {"as_of": args.as_of} if args.as_of else {}
            _write_or_print(args, client.call("GET", "/wall", params=params))
        else:
            params = {"as_of": args.as_of} if args.as_of else {}
            _write_or_print(
                args, client.call("GET", f"/profile/{args.contributor_id}", params=params)
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
