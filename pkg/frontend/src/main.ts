import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("mount point #app not found");
}
new App(root, new ApiClient(""));
