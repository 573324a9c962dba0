"""Run the service: python -m entailsvc --model <checkpoint|lexical>."""

from __future__ import annotations

import argparse

import uvicorn

from .app import DEFAULT_QUEUE_SIZE, create_app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="entail-svc", description=__doc__)
    parser.add_argument("--host", default="0.0.0.0")
    parser.add_argument("--port", type=int, default=8040)
    parser.add_argument(
        "--model",
        default="lexical",
        help="transformers checkpoint id/path, or 'lexical' for the overlap baseline",
    )
    parser.add_argument("--queue-size", type=int, default=DEFAULT_QUEUE_SIZE)
    args = parser.parse_args(argv)
    app = create_app(model=args.model, queue_size=args.queue_size)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
