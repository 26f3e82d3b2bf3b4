import { HttpApi } from "./api.js";
import { AudioEarcons } from "./earcons.js";
import { createApp } from "./app.js";

const root = document.getElementById("avse-root");
if (root) {
  const app = createApp(root, new HttpApi(""), new AudioEarcons());
  void app.refresh();
}
