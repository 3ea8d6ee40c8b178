/* tslint:disable */
/* eslint-disable */

export function asfCurve(p: number, q: number, a: number, x_max: number, samples: number): string;

export function asfLogExcessCurve(p: number, q: number, a: number, x_max: number, samples: number): string;

export function evaluateText(text: string, ratio: number, p: number, q: number, a: number, period: number, top_l: number, seed: number): string;

export function expCurve(theta: number, x_max: number, samples: number): string;

export function explainPair(text: string, x: string, y: string, p: number, q: number, a: number, period: number): string;

export function syntheticNetwork(nodes: number, edges: number, closure: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly asfCurve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly asfLogExcessCurve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly evaluateText: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly expCurve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly explainPair: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number, number];
    readonly syntheticNetwork: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
