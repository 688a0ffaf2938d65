"""Command-line front end.

Subcommands: specify (optimal assignment against a reference), quantile
(fast quantile transformer with optional normal retarget), compare (error
report for all methods), image-demo (grayscale specification walkthrough).

Conventions: logs go to standard error, data to files or standard output;
exit 2 flags usage errors (bad p, bad parameters), exit 1 flags data errors
(parse failures, length mismatches); outputs are byte-identical across
repeated runs on identical inputs.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from .baseline import baseline_transform
from .exceptions import (
    InvalidParamsError,
    InvalidPError,
    LengthMismatchError,
    MergedUniqueValuesWarning,
    PixelCountMismatchError,
)
from .io import (
    GrayscaleImage,
    ReportEntry,
    SpecificationReport,
    TabularDataset,
    ecdf_points,
    flatten_columns,
    inscribe_rectangle,
    read_csv,
    read_pgm,
    reshape_columns,
    write_csv,
    write_pgm,
    write_report,
)
from .io.report import KNOWN_METHODS, format_p
from .quantile import (
    EmpiricalReference,
    NormalReference,
    PlottingPositions,
    UniformReference,
    normal_inverse_cdf,
    quantile_transform,
    uniform_reference,
)
from .specification import specification_error, specify

__all__ = ["build_parser", "main"]


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _parse_p(text) -> float:
    t = str(text).strip().lower()
    if t in ("inf", "infinity"):
        return math.inf
    try:
        p = float(t)
    except ValueError:
        raise InvalidPError(f"cannot parse norm order from {text!r}") from None
    if math.isnan(p) or p < 1.0:
        raise InvalidPError(f"norm order must satisfy p >= 1, got {text!r}")
    return p


def _parse_reference(text: str):
    """'uniform' | 'normal[:MU,SIGMA]' | 'file:PATH' -> (kind, *params)."""
    if text == "uniform":
        return ("uniform",)
    if text == "normal":
        return ("normal", 0.0, 1.0)
    if text.startswith("normal:"):
        parts = text[len("normal:"):].split(",")
        if len(parts) != 2:
            raise InvalidParamsError(
                f"normal reference must be normal:MU,SIGMA, got {text!r}"
            )
        try:
            mu, sigma = float(parts[0]), float(parts[1])
        except ValueError:
            raise InvalidParamsError(
                f"normal reference parameters must be numeric, got {text!r}"
            ) from None
        if not sigma > 0.0:
            raise InvalidParamsError(f"sigma must be positive, got {sigma}")
        return ("normal", mu, sigma)
    if text.startswith("file:"):
        path = text[len("file:"):]
        if not path:
            raise InvalidParamsError("file reference needs a path: file:PATH")
        return ("file", path)
    raise InvalidParamsError(
        f"unknown reference {text!r}: expected uniform, normal[:MU,SIGMA], or file:PATH"
    )


def _split_references(text: str):
    """Split a comma list of references, keeping commas inside one reference.

    'uniform,normal:0,1' -> ['uniform', 'normal:0,1']: a fragment starts a new
    reference only if it looks like one; otherwise it continues the previous
    token (normal:MU,SIGMA parameters, file paths containing commas).
    """
    tokens = []
    for frag in text.split(","):
        frag = frag.strip()
        if not frag:
            continue
        starts_new = frag in ("uniform", "normal") or frag.startswith(
            ("normal:", "file:")
        )
        if tokens and not starts_new:
            tokens[-1] += "," + frag
        else:
            tokens.append(frag)
    return tokens


def _pair_columns(ds: TabularDataset, ref_ds: TabularDataset):
    """Match reference columns to input columns by name, else by position."""
    if all(name in ref_ds.column_names for name in ds.column_names):
        return [ref_ds.column(name) for name in ds.column_names]
    if len(ref_ds.columns) == len(ds.columns):
        return list(ref_ds.columns)
    raise LengthMismatchError(
        f"cannot pair {len(ds.columns)} input columns with "
        f"{len(ref_ds.columns)} reference columns (no name match)"
    )


def _reference_column_values(refspec, n: int, pp: PlottingPositions, paired):
    """Sorted length-n reference values for one column."""
    if refspec[0] == "uniform":
        return uniform_reference(n, pp)
    if refspec[0] == "normal":
        return normal_inverse_cdf(uniform_reference(n, pp), refspec[1], refspec[2])
    col = np.asarray(paired, dtype=float)
    if col.size != n:
        raise LengthMismatchError(
            f"reference column has {col.size} values, input column has {n}"
        )
    return np.sort(col, kind="stable")


def _specify_recording_warnings(x, v, p):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        y = specify(x, v, p)
    notes = tuple(
        str(w.message) for w in caught if issubclass(w.category, MergedUniqueValuesWarning)
    )
    return y, notes


def _emit_tabular(ds: TabularDataset, output) -> None:
    payload = write_csv(ds)
    if output:
        Path(output).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))


def _emit_report(report, args) -> None:
    fmt = args.report_format
    path = args.report
    if path is None and args.output:
        path = f"{args.output}.report.{fmt}"
    if path:
        write_report(report, fmt, path)
        _log(f"report written to {path}")


def _transform_command(args, method: str) -> int:
    pp = PlottingPositions(args.alpha, args.beta)
    p = _parse_p(args.p)
    refspec = _parse_reference(args.reference)
    if method == "algorithm2" and refspec[0] == "file":
        raise InvalidParamsError(
            "quantile supports uniform and normal references only"
        )

    ds = read_csv(args.input, delimiter=args.delimiter, header=not args.no_header)
    ref_cols = None
    if refspec[0] == "file":
        ref_cols = _pair_columns(
            ds, read_csv(refspec[1], delimiter=args.delimiter, header=not args.no_header)
        )

    dataset_name = os.path.basename(args.input)
    out_cols, entries = [], []
    for j, (name, col) in enumerate(zip(ds.column_names, ds.columns)):
        v = _reference_column_values(
            refspec, col.size, pp, ref_cols[j] if ref_cols else None
        )
        if method == "algorithm1":
            y, notes = _specify_recording_warnings(col, v, p)
        else:
            q = quantile_transform(col, pp)
            y = q if refspec[0] == "uniform" else normal_inverse_cdf(q, refspec[1], refspec[2])
            notes = ()
        err = specification_error(y, v, p)
        entries.append(
            ReportEntry(
                dataset=dataset_name,
                column=name,
                reference=args.reference,
                p=p,
                method=method,
                error=err,
                n=col.size,
                m=np.unique(col).size,
                warnings=notes,
            )
        )
        out_cols.append(y)
        _log(f"{dataset_name}:{name}: n={col.size} p={format_p(p)} error={err!r}")

    _emit_tabular(TabularDataset(ds.column_names, tuple(out_cols)), args.output)
    report = SpecificationReport(
        entries,
        parameters={
            "input": dataset_name,
            "reference": args.reference,
            "p": format_p(p),
            "alpha": args.alpha,
            "beta": args.beta,
            "method": method,
        },
    )
    _emit_report(report, args)
    return 0


def _run_specify(args) -> int:
    return _transform_command(args, "algorithm1")


def _run_quantile(args) -> int:
    return _transform_command(args, "algorithm2")


def _method_output(method, col, v, p, pp, refspec, ref_col):
    """Transformed column for one method; returns (values, warning notes)."""
    if method == "algorithm1":
        return _specify_recording_warnings(col, v, p)
    if method == "algorithm2":
        q = quantile_transform(col, pp)
        if refspec[0] == "uniform":
            return q, ()
        if refspec[0] == "normal":
            return normal_inverse_cdf(q, refspec[1], refspec[2]), ()
        # Inversion method against the estimated quantile function of the
        # reference sample: interpolate q into its plotting-position knots.
        xs = np.sort(np.asarray(ref_col, dtype=float), kind="stable")
        return np.interp(q, uniform_reference(xs.size, pp), xs), ()
    if refspec[0] == "uniform":
        ref = UniformReference(pp)
    elif refspec[0] == "normal":
        ref = NormalReference(refspec[1], refspec[2])
    else:
        ref = EmpiricalReference(np.asarray(ref_col, dtype=float))
    return baseline_transform(col, ref, pp), ()


def _run_compare(args) -> int:
    pp = PlottingPositions(args.alpha, args.beta)
    p_list = [_parse_p(t) for t in args.p.split(",") if t.strip()]
    if not p_list:
        raise InvalidPError("need at least one norm order")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in KNOWN_METHODS:
            raise InvalidParamsError(
                f"unknown method {m!r}, expected subset of {', '.join(KNOWN_METHODS)}"
            )
    ref_texts = _split_references(args.references)
    if not ref_texts:
        raise InvalidParamsError("need at least one reference")

    ds = read_csv(args.input, delimiter=args.delimiter, header=not args.no_header)
    dataset_name = os.path.basename(args.input)

    entries = []
    dominance = None
    for ref_text in ref_texts:
        refspec = _parse_reference(ref_text)
        ref_cols = None
        if refspec[0] == "file":
            ref_cols = _pair_columns(
                ds,
                read_csv(refspec[1], delimiter=args.delimiter, header=not args.no_header),
            )
        for j, (name, col) in enumerate(zip(ds.column_names, ds.columns)):
            ref_col = ref_cols[j] if ref_cols else None
            v = _reference_column_values(refspec, col.size, pp, ref_col)
            m_unique = np.unique(col).size
            for p in p_list:
                errors = {}
                for method in methods:
                    y, notes = _method_output(method, col, v, p, pp, refspec, ref_col)
                    err = specification_error(y, v, p)
                    errors[method] = err
                    entries.append(
                        ReportEntry(
                            dataset=dataset_name,
                            column=name,
                            reference=ref_text,
                            p=p,
                            method=method,
                            error=err,
                            n=col.size,
                            m=m_unique,
                            warnings=notes,
                        )
                    )
                if "algorithm1" in errors and len(errors) > 1:
                    others = min(e for m, e in errors.items() if m != "algorithm1")
                    row_ok = errors["algorithm1"] <= others + 1e-12
                    dominance = row_ok if dominance is None else (dominance and row_ok)

    report = SpecificationReport(
        entries,
        parameters={
            "input": dataset_name,
            "references": ref_texts,
            "p": [format_p(p) for p in p_list],
            "methods": methods,
            "alpha": args.alpha,
            "beta": args.beta,
        },
        dominance=dominance,
    )
    payload = write_report(report, args.report_format)
    if args.output:
        Path(args.output).write_bytes(payload)
        _log(f"report written to {args.output}")
    else:
        sys.stdout.write(payload.decode("utf-8"))
    if dominance is not None:
        _log(f"dominance check: {'passed' if dominance else 'FAILED'}")
    return 0


def _parse_rectangle(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise InvalidParamsError(
            f"rectangle must be X0,Y0,W,H, got {text!r}"
        )
    try:
        return tuple(int(t) for t in parts)
    except ValueError:
        raise InvalidParamsError(
            f"rectangle coordinates must be integers, got {text!r}"
        ) from None


def _write_value_fraction_csv(path, values, fractions) -> None:
    lines = ["value,fraction"]
    lines.extend(
        f"{repr(float(v))},{repr(float(f))}" for v, f in zip(values, fractions)
    )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _run_image_demo(args) -> int:
    p = _parse_p(args.p)
    img = read_pgm(args.input)
    ref = read_pgm(args.reference)
    if img.pixels.size != ref.pixels.size:
        raise PixelCountMismatchError(
            f"input has {img.pixels.size} pixels, reference has {ref.pixels.size}"
        )

    rect = _parse_rectangle(args.rectangle) if args.rectangle else None
    work = img
    if rect:
        work = inscribe_rectangle(img, *rect, value=args.rectangle_value)

    x = flatten_columns(work)
    v = np.sort(flatten_columns(ref), kind="stable")
    y, notes = _specify_recording_warnings(x, v, p)
    err = specification_error(y, v, p)
    grid = reshape_columns(y, work.width, work.height)

    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    dataset_name = os.path.basename(args.input)

    entries = [
        ReportEntry(
            dataset=dataset_name,
            column="pixels",
            reference=f"file:{args.reference}",
            p=p,
            method="algorithm1",
            error=err,
            n=x.size,
            m=np.unique(x).size,
            warnings=notes,
        )
    ]

    if args.quantize:
        quantized = GrayscaleImage(np.clip(np.rint(grid), 0.0, 255.0))
        write_pgm(quantized, outdir / "specified.pgm")
        qerr = specification_error(flatten_columns(quantized), v, p)
        entries.append(
            ReportEntry(
                dataset=dataset_name,
                column="pixels_quantized",
                reference=f"file:{args.reference}",
                p=p,
                method="algorithm1",
                error=qerr,
                n=x.size,
                m=np.unique(x).size,
                warnings=notes,
            )
        )
        _log(f"quantized image written to {outdir / 'specified.pgm'}")
    else:
        rows = (",".join(repr(float(val)) for val in row) for row in grid)
        (outdir / "specified.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
        _log(f"specified values written to {outdir / 'specified.csv'}")

    scan_col = rect[0] + rect[2] // 2 if rect else work.width // 2
    scan_lines = ["row,input,output"]
    scan_lines.extend(
        f"{i},{int(work.pixels[i, scan_col])},{repr(float(grid[i, scan_col]))}"
        for i in range(work.height)
    )
    (outdir / "scanline.csv").write_text("\n".join(scan_lines) + "\n", encoding="utf-8")

    for stem, values in (
        ("ecdf_input", x),
        ("ecdf_reference", flatten_columns(ref)),
        ("ecdf_output", y),
    ):
        e, fr = ecdf_points(values)
        _write_value_fraction_csv(outdir / f"{stem}.csv", e, fr)

    report = SpecificationReport(
        entries,
        parameters={
            "input": dataset_name,
            "reference": os.path.basename(args.reference),
            "p": format_p(p),
            "rectangle": list(rect) if rect else None,
            "rectangle_value": args.rectangle_value if rect else None,
            "quantize": bool(args.quantize),
            "scan_column": scan_col,
        },
    )
    write_report(report, args.report_format, outdir / f"report.{args.report_format}")
    _log(
        f"{dataset_name}: n={x.size} p={format_p(p)} error={err!r}; "
        f"outputs in {outdir}"
    )
    return 0


def _add_tabular_options(sub, default_p: str) -> None:
    sub.add_argument("input", help="input CSV path")
    sub.add_argument("--p", default=default_p, help="norm order: 1, 2, inf, or a real >= 1")
    sub.add_argument("--alpha", type=float, default=0.0, help="plotting position alpha")
    sub.add_argument("--beta", type=float, default=0.0, help="plotting position beta")
    sub.add_argument("--delimiter", default=",", help="CSV delimiter")
    sub.add_argument("--no-header", action="store_true", help="input has no header row")
    sub.add_argument("--output", "-o", help="output path (stdout when omitted)")
    sub.add_argument(
        "--report-format", choices=("json", "csv"), default="json", help="report format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="histspec",
        description="Histogram specification by optimal unique-value assignment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser(
        "specify", help="least p-norm specification against a reference"
    )
    _add_tabular_options(sp, default_p="2")
    sp.add_argument(
        "--reference",
        default="uniform",
        help="uniform | normal[:MU,SIGMA] | file:PATH",
    )
    sp.add_argument("--report", help="report path (default: OUTPUT.report.FMT)")
    sp.set_defaults(func=_run_specify)

    qt = sub.add_parser("quantile", help="fast quantile transformation")
    _add_tabular_options(qt, default_p="2")
    qt.add_argument(
        "--reference", default="uniform", help="uniform | normal[:MU,SIGMA]"
    )
    qt.add_argument("--report", help="report path (default: OUTPUT.report.FMT)")
    qt.set_defaults(func=_run_quantile)

    cp = sub.add_parser("compare", help="error report across methods")
    _add_tabular_options(cp, default_p="1,2,inf")
    cp.add_argument(
        "--references",
        default="uniform,normal",
        help="comma-separated reference specs",
    )
    cp.add_argument(
        "--methods",
        default=",".join(KNOWN_METHODS),
        help="comma-separated subset of " + ",".join(KNOWN_METHODS),
    )
    cp.set_defaults(func=_run_compare)

    im = sub.add_parser("image-demo", help="grayscale specification demo")
    im.add_argument("input", help="input PGM path")
    im.add_argument("reference", help="reference PGM path")
    im.add_argument("--p", default="1", help="norm order (default 1)")
    im.add_argument("--rectangle", help="inscribe constant rectangle X0,Y0,W,H")
    im.add_argument(
        "--rectangle-value", type=int, default=148, help="rectangle intensity"
    )
    im.add_argument(
        "--quantize",
        action="store_true",
        help="round output to integers and write a PGM instead of CSV",
    )
    im.add_argument("--output-dir", default="image_demo_out", help="output directory")
    im.add_argument(
        "--report-format", choices=("json", "csv"), default="json", help="report format"
    )
    im.set_defaults(func=_run_image_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidPError, InvalidParamsError) as exc:
        _log(f"error: {exc}")
        return 2
    except (ValueError, OSError) as exc:
        _log(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
