/** View state: frame index arithmetic, zoom, and pan clamping.
 *
 * The UI never computes machine semantics; index stepping mirrors the
 * service's clamped navigation contract, and zoom/pan limits guarantee a
 * part of the diagram always stays visible.
 */

export const ZOOM_MIN = 0.25;
export const ZOOM_MAX = 4.0;
export const ZOOM_STEP = 1.25;
/** Minimum number of pixels of diagram kept inside the viewport. */
export const PAN_MARGIN = 80;

export interface ViewTransform {
  zoom: number;
  panX: number;
  panY: number;
}

export interface Size {
  width: number;
  height: number;
}

export function clampZoom(zoom: number): number {
  return Math.min(ZOOM_MAX, Math.max(ZOOM_MIN, zoom));
}

export function zoomBy(view: ViewTransform, factor: number): ViewTransform {
  return { ...view, zoom: clampZoom(view.zoom * factor) };
}

export function clampPan(view: ViewTransform, viewport: Size, content: Size): ViewTransform {
  const w = content.width * view.zoom;
  const h = content.height * view.zoom;
  const margin = Math.min(PAN_MARGIN, w, h);
  const panX = Math.min(viewport.width - margin, Math.max(margin - w, view.panX));
  const panY = Math.min(viewport.height - margin, Math.max(margin - h, view.panY));
  return { ...view, panX, panY };
}

export type StepCommand = "NEXT" | "PREV" | "BEGIN" | "END";

export function stepIndex(current: number, frameCount: number, command: StepCommand): number {
  const last = frameCount - 1;
  switch (command) {
    case "NEXT":
      return Math.min(current + 1, last);
    case "PREV":
      return Math.max(current - 1, 0);
    case "BEGIN":
      return 0;
    case "END":
      return last;
  }
}
