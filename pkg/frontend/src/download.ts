/** Browser file-save helper: wrap bytes in a blob and click a link. */

export function download(
  data: string | ArrayBuffer,
  filename: string,
  mime: string,
): void {
  const blob = new Blob([data], { type: mime });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}
