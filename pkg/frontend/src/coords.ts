// Canvas <-> raster coordinate mapping. The canvas letterboxes the image
// with uniform scaling so a touch point maps to exactly one image pixel.

export interface Letterbox {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export function letterbox(
  canvasWidth: number,
  canvasHeight: number,
  imageWidth: number,
  imageHeight: number,
): Letterbox {
  const scale = Math.min(canvasWidth / imageWidth, canvasHeight / imageHeight);
  return {
    scale,
    offsetX: (canvasWidth - imageWidth * scale) / 2,
    offsetY: (canvasHeight - imageHeight * scale) / 2,
  };
}

/** Canvas point to image pixel, or null when outside the letterboxed area. */
export function canvasToImage(
  x: number,
  y: number,
  box: Letterbox,
  imageWidth: number,
  imageHeight: number,
): [number, number] | null {
  const ix = Math.floor((x - box.offsetX) / box.scale);
  const iy = Math.floor((y - box.offsetY) / box.scale);
  if (ix < 0 || iy < 0 || ix >= imageWidth || iy >= imageHeight) {
    return null;
  }
  return [ix, iy];
}

export function imageToCanvas(ix: number, iy: number, box: Letterbox): [number, number] {
  return [box.offsetX + ix * box.scale, box.offsetY + iy * box.scale];
}
